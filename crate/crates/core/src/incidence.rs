//! Zeta and Möbius functions of graded posets, Whitney numbers and
//! characteristic polynomials.
//!
//! Matrices are indexed by natural labels (0-based in storage). The
//! general-purpose routes are [`zeta_closure`] and [`mobius_oracle`]; the
//! cobweb-specific closed forms take only the F-sequence and level indices
//! and are expected to agree with them entrywise.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::fsequence::FSequence;
use crate::matrix::IntMatrix;
use crate::poset::{GradedPoset, GridVertex};

/// `ζ(x,y) = [x ≤ y]`, via the reflexive-transitive closure of the Hasse adjacency matrix.
pub fn zeta_closure(p: &GradedPoset) -> IntMatrix {
    let closure = p.adjacency_matrix().reflexive_transitive_closure().expect("square adjacency");
    IntMatrix::from_bool(&closure).expect("square closure")
}

/// Level boundaries `S(0) = 0, S(1), …, S(n)` with `S(m) = 1_F + … + m_F`.
fn level_boundaries(f: &FSequence, n: usize) -> Result<Vec<usize>> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(0);
    for k in 1..=n {
        let next = out[k - 1] + f.size(k)?;
        out.push(next);
    }
    Ok(out)
}

/// `ζ(x,y) = [x≤y] − [x<y] Σ_{m≥0} [x > S(m)] [y ≤ S(m+1)]` on the cobweb
/// with levels `1..=n`, for 1-based labels `x`, `y`. The correction term
/// removes pairs that share a level.
pub fn zeta_cobweb_closed(f: &FSequence, n: usize, x: usize, y: usize) -> Result<u8> {
    let bounds = level_boundaries(f, n)?;
    zeta_from_bounds(&bounds, x, y)
}

fn zeta_from_bounds(bounds: &[usize], x: usize, y: usize) -> Result<u8> {
    let total = *bounds.last().unwrap_or(&0);
    for label in [x, y] {
        if label == 0 || label > total {
            return Err(Error::LabelOutOfRange { label, max: total });
        }
    }
    let leq = u8::from(x <= y);
    let lt = x < y;
    let correction = bounds.windows(2).filter(|w| lt && x > w[0] && y <= w[1]).count();
    Ok(leq - correction as u8)
}

/// The full cobweb zeta matrix from [`zeta_cobweb_closed`], without building the poset.
pub fn zeta_cobweb_matrix(f: &FSequence, n: usize) -> Result<IntMatrix> {
    let bounds = level_boundaries(f, n)?;
    let size = bounds[n];
    let mut z = IntMatrix::zeros(size);
    for x in 1..=size {
        for y in x..=size {
            if zeta_from_bounds(&bounds, x, y)? == 1 {
                z.set(x - 1, y - 1, BigInt::one());
            }
        }
    }
    Ok(z)
}

/// Inverse of a unit upper-triangular matrix by back-substitution:
/// `μ(x,y) = −Σ_{x ≤ z < y} μ(x,z) ζ(z,y)`.
pub fn unit_triangular_inverse(zeta: &IntMatrix) -> Result<IntMatrix> {
    if !zeta.is_unit_upper_triangular() {
        return Err(Error::Shape("matrix is not unit upper-triangular".into()));
    }
    let n = zeta.size();
    let mut mu = IntMatrix::identity(n);
    for x in 0..n {
        for y in x + 1..n {
            let mut acc = BigInt::zero();
            for z in x..y {
                let m = mu.get(x, z);
                if m.is_zero() {
                    continue;
                }
                let zz = zeta.get(z, y);
                if !zz.is_zero() {
                    acc += m * zz;
                }
            }
            mu.set(x, y, -acc);
        }
    }
    Ok(mu)
}

/// Möbius matrix of `p` as the exact inverse of its zeta matrix.
pub fn mobius_oracle(p: &GradedPoset) -> IntMatrix {
    unit_triangular_inverse(&zeta_closure(p)).expect("natural labeling is order-preserving")
}

fn minus_one_product(f: &FSequence, from: usize, to_exclusive: usize) -> Result<BigInt> {
    (from..to_exclusive).try_fold(BigInt::one(), |acc, k| Ok(acc * (BigInt::from(f.value(k)?) - 1)))
}

fn sign(exp: usize) -> BigInt {
    if exp.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// Möbius value between ranks `r ≤ s` of a cobweb:
/// `(−1)^{s−r} ∏_{k=r+1}^{s−1} (k_F − 1)`.
pub fn mobius_cobweb(f: &FSequence, r: usize, s: usize) -> Result<BigInt> {
    if r > s {
        return Err(Error::LevelRange { first: r, last: s });
    }
    if r == 0 && f.zeroth().is_none() {
        return Err(Error::NoBottomLevel);
    }
    if r == s {
        return Ok(BigInt::one());
    }
    Ok(sign(s - r) * minus_one_product(f, r + 1, s)?)
}

/// The coefficient `(−1)^{s−r} ∏_{k=r+1}^{s} (k_F − 1)`, a rising product with
/// one factor more than [`mobius_cobweb`]. It does not invert ζ; kept so the
/// disagreement can be demonstrated.
pub fn rising_coefficient(f: &FSequence, r: usize, s: usize) -> Result<BigInt> {
    if r > s {
        return Err(Error::LevelRange { first: r, last: s });
    }
    let minus_one = |x: &BigInt| x - 1;
    Ok(sign(s - r) * f.upper_function_factorial(minus_one, r + 1, s - r)?)
}

fn check_grid(f: &FSequence, v: GridVertex) -> Result<()> {
    let size = f.value(v.t)?;
    if v.s == 0 || BigUint::from(v.s) > size {
        return Err(Error::InvalidVertex { s: v.s, t: v.t });
    }
    Ok(())
}

/// `μ(⟨s,t⟩,⟨u,v⟩) = [s=u][t=v] − [t+1=v] + [t+1<v] (−1)^{v−t} ∏_{i=t+1}^{v−1} (i_F − 1)`.
pub fn mobius_grid(f: &FSequence, x: GridVertex, y: GridVertex) -> Result<BigInt> {
    check_grid(f, x)?;
    check_grid(f, y)?;
    let (t, v) = (x.t, y.t);
    let mut value = BigInt::zero();
    if x.s == y.s && t == v {
        value += 1;
    }
    if t + 1 == v {
        value -= 1;
    }
    if t + 1 < v {
        value += sign(v - t) * minus_one_product(f, t + 1, v)?;
    }
    Ok(value)
}

/// Level-indexed Möbius coefficients `c_{r,s}` of a cobweb.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodingMatrix {
    first: usize,
    coeffs: Vec<Vec<BigInt>>,
}

impl CodingMatrix {
    pub fn first_level(&self) -> usize {
        self.first
    }

    pub fn last_level(&self) -> usize {
        self.first + self.coeffs.len() - 1
    }

    /// `c_{r,s}`; zero below the diagonal.
    pub fn get(&self, r: usize, s: usize) -> BigInt {
        if r > s || r < self.first || s > self.last_level() {
            return BigInt::zero();
        }
        self.coeffs[r - self.first][s - self.first].clone()
    }

    /// The full Möbius matrix: identity blocks on the diagonal and
    /// `c_{r,s}` times an all-ones block above it.
    pub fn expand(&self, f: &FSequence) -> Result<IntMatrix> {
        let sizes = f.sizes(self.first, self.last_level())?;
        let mut offsets = vec![0];
        for s in &sizes {
            offsets.push(offsets.last().unwrap() + s);
        }
        let mut mu = IntMatrix::identity(*offsets.last().unwrap());
        for (i, row) in self.coeffs.iter().enumerate() {
            for (j, c) in row.iter().enumerate().skip(i + 1) {
                if c.is_zero() {
                    continue;
                }
                for x in offsets[i]..offsets[i + 1] {
                    for y in offsets[j]..offsets[j + 1] {
                        mu.set(x, y, c.clone());
                    }
                }
            }
        }
        Ok(mu)
    }
}

/// Coding matrix for levels `1..=up_to`.
pub fn coding_matrix(f: &FSequence, up_to: usize) -> Result<CodingMatrix> {
    coding_matrix_levels(f, 1, up_to)
}

pub fn coding_matrix_levels(f: &FSequence, first: usize, last: usize) -> Result<CodingMatrix> {
    if first > last {
        return Err(Error::LevelRange { first, last });
    }
    let coeffs = (first..=last)
        .map(|r| {
            (first..=last)
                .map(|s| if s < r { Ok(BigInt::zero()) } else { mobius_cobweb(f, r, s) })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CodingMatrix { first, coeffs })
}

/// `f` with `0_F = 1`, or an error if it carries a different zeroth value.
pub fn with_singleton_bottom(f: &FSequence) -> Result<FSequence> {
    match f.zeroth() {
        Some(z) if !z.is_one() => Err(Error::BottomNotSingleton(z.clone())),
        _ => Ok(f.clone().with_bottom()),
    }
}

/// `w_r = r_F · (−1)^r ∏_{k=1}^{r−1} (k_F − 1)`, with `w_0 = 1`.
pub fn whitney_first(f: &FSequence, r: usize) -> Result<BigInt> {
    let f = with_singleton_bottom(f)?;
    if r == 0 {
        return Ok(BigInt::one());
    }
    Ok(BigInt::from(f.value(r)?) * mobius_cobweb(&f, 0, r)?)
}

/// `W_r = r_F`, the number of rank-`r` elements.
pub fn whitney_second(f: &FSequence, r: usize) -> Result<BigUint> {
    with_singleton_bottom(f)?.value(r)
}

/// `Σ_{r(x)=r} μ(0,x)` for each rank of a graded poset whose lowest level is
/// a single element, straight from [`mobius_oracle`].
pub fn whitney_first_by_oracle(p: &GradedPoset) -> Result<Vec<BigInt>> {
    if p.sizes()[0] != 1 {
        return Err(Error::BottomNotSingleton(BigUint::from(p.sizes()[0])));
    }
    let mu = mobius_oracle(p);
    let labels = p.natural_labeling();
    let offsets = labels.offsets();
    Ok((0..p.num_levels())
        .map(|i| (offsets[i]..offsets[i + 1]).map(|x| mu.get(0, x)).sum())
        .collect())
}

/// Integer polynomial, coefficients stored by ascending power.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<BigInt>,
}

impl Polynomial {
    pub fn from_ascending(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(BigInt::zero());
        }
        Self { coeffs }
    }

    pub fn from_descending(coeffs: Vec<BigInt>) -> Self {
        Self::from_ascending(coeffs.into_iter().rev().collect())
    }

    pub fn from_i64_descending(coeffs: &[i64]) -> Self {
        Self::from_descending(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `t^power`.
    pub fn coeff(&self, power: usize) -> BigInt {
        self.coeffs.get(power).cloned().unwrap_or_default()
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn eval(&self, t: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * t + c)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (power, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            match (wrote, c.is_negative()) {
                (false, true) => write!(f, "-")?,
                (true, true) => write!(f, " - ")?,
                (true, false) => write!(f, " + ")?,
                (false, false) => {}
            }
            let show_coeff = power == 0 || !magnitude.is_one();
            if show_coeff {
                write!(f, "{magnitude}")?;
            }
            match power {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{power}")?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `χ(t) = Σ_{k=0}^{n} w_k t^{n−k}` for the cobweb on levels `0..=n`.
pub fn char_poly(f: &FSequence, n: usize) -> Result<Polynomial> {
    let desc = (0..=n).map(|k| whitney_first(f, k)).collect::<Result<Vec<_>>>()?;
    Ok(Polynomial::from_descending(desc))
}

/// `Σ_x μ(0,x) t^{n−r(x)}` summed element by element from [`mobius_oracle`].
pub fn char_poly_by_oracle(p: &GradedPoset) -> Result<Polynomial> {
    Ok(Polynomial::from_descending(whitney_first_by_oracle(p)?))
}

/// The rank-one term `−1_F (1_F − 1)` as it is sometimes written for `w_1`.
/// It equals `w_1 = −1_F` only when `1_F = 2`.
pub fn rank_one_shortcut(f: &FSequence) -> Result<BigInt> {
    let one = BigInt::from(f.value(1)?);
    let below: BigInt = &one - 1;
    Ok(-(one * below))
}

/// Text staircase of `ζ`: row `x` is blank left of the
/// diagonal, `1` on it, `0` where `ζ(x,y) = 0` to its right and `-` on the
/// remaining comparable pairs.
pub fn staircase(p: &GradedPoset) -> String {
    let zeta = zeta_closure(p);
    let n = zeta.size();
    let mut out = String::new();
    for x in 0..n {
        let cells: Vec<&str> = (0..n)
            .map(|y| match y.cmp(&x) {
                std::cmp::Ordering::Less => " ",
                std::cmp::Ordering::Equal => "1",
                std::cmp::Ordering::Greater if zeta.get(x, y).is_zero() => "0",
                std::cmp::Ordering::Greater => "-",
            })
            .collect();
        out.push_str(cells.join(" ").trim_end());
        out.push('\n');
    }
    out
}

/// Number of `0` cells in each staircase row.
pub fn staircase_zero_runs(text: &str) -> Vec<usize> {
    text.lines().map(|line| line.split(' ').filter(|c| *c == "0").count()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::BoolMatrix;

    fn int(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()).unwrap()
    }

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn zeta_examples() {
        let fan = GradedPoset::cobweb(&FSequence::natural(), 2).unwrap();
        assert_eq!(zeta_closure(&fan), int(&[&[1, 1, 1], &[0, 1, 0], &[0, 0, 1]]));
        let chain = zeta_closure(&GradedPoset::chain(3).unwrap());
        assert_eq!(chain, int(&[&[1, 1, 1], &[0, 1, 1], &[0, 0, 1]]));
    }

    #[test]
    fn knuth_bracket_zeta() {
        let n = FSequence::natural();
        assert_eq!(zeta_cobweb_closed(&n, 3, 2, 3).unwrap(), 0);
        assert_eq!(zeta_cobweb_closed(&n, 3, 1, 4).unwrap(), 1);
        assert_eq!(zeta_cobweb_closed(&n, 3, 5, 5).unwrap(), 1);
        assert_eq!(zeta_cobweb_closed(&n, 3, 4, 2).unwrap(), 0);
        assert!(zeta_cobweb_closed(&n, 3, 7, 1).is_err());
        for f in FSequence::reference_set() {
            let p = GradedPoset::cobweb(&f, 4).unwrap();
            assert_eq!(zeta_cobweb_matrix(&f, 4).unwrap(), zeta_closure(&p));
        }
    }

    #[test]
    fn mobius_oracle_examples() {
        let fan = GradedPoset::cobweb(&FSequence::natural(), 2).unwrap();
        assert_eq!(mobius_oracle(&fan), int(&[&[1, -1, -1], &[0, 1, 0], &[0, 0, 1]]));
        let chain = mobius_oracle(&GradedPoset::chain(3).unwrap());
        assert_eq!(chain, int(&[&[1, -1, 0], &[0, 1, -1], &[0, 0, 1]]));
        let p = GradedPoset::cobweb(&FSequence::fibonacci(), 5).unwrap();
        assert!(zeta_closure(&p).mul(&mobius_oracle(&p)).unwrap().is_identity());
        assert!(unit_triangular_inverse(&int(&[&[2, 0], &[0, 1]])).is_err());
    }

    #[test]
    fn closed_mobius_examples() {
        let nat = FSequence::natural();
        let fib = FSequence::fibonacci();
        assert_eq!(mobius_cobweb(&nat, 3, 3).unwrap(), big(1));
        assert_eq!(mobius_cobweb(&fib, 2, 3).unwrap(), big(-1));
        assert_eq!(mobius_cobweb(&nat, 1, 3).unwrap(), big(1));
        assert_eq!(mobius_cobweb(&fib, 1, 4).unwrap(), big(0));
        assert_eq!(mobius_cobweb(&FSequence::gaussian(2), 2, 4).unwrap(), big(6));
        assert!(mobius_cobweb(&nat, 3, 2).is_err());
        assert_eq!(mobius_cobweb(&nat, 0, 1), Err(Error::NoBottomLevel));
        let oracle = mobius_oracle(&GradedPoset::cobweb(&nat, 3).unwrap());
        assert_eq!(oracle.get(0, 3), &big(1));
    }

    #[test]
    fn grid_mobius() {
        let nat = FSequence::natural();
        let v = GridVertex::new;
        assert_eq!(mobius_grid(&nat, v(2, 3), v(2, 3)).unwrap(), big(1));
        assert_eq!(mobius_grid(&nat, v(1, 2), v(3, 3)).unwrap(), big(-1));
        assert_eq!(mobius_grid(&nat, v(1, 1), v(2, 3)).unwrap(), big(1));
        assert_eq!(mobius_grid(&nat, v(1, 2), v(2, 2)).unwrap(), big(0));
        assert_eq!(mobius_grid(&nat, v(1, 3), v(1, 1)).unwrap(), big(0));
        assert!(mobius_grid(&nat, v(3, 2), v(1, 3)).is_err());
    }

    #[test]
    fn coding_matrices() {
        let nat = FSequence::natural();
        let c = coding_matrix(&nat, 4).unwrap();
        assert_eq!(c.get(2, 2), big(1));
        assert_eq!(c.get(1, 3), big(1));
        assert_eq!(c.get(1, 4), big(-2));
        assert_eq!(c.get(3, 1), big(0));
        let p = GradedPoset::cobweb(&nat, 4).unwrap();
        assert_eq!(c.expand(&nat).unwrap(), mobius_oracle(&p));

        let one = FSequence::constant(1).unwrap();
        let c = coding_matrix(&one, 6).unwrap();
        for r in 1..=6 {
            for s in r + 2..=6 {
                assert_eq!(c.get(r, s), big(0));
            }
        }
    }

    #[test]
    fn rising_coefficient_fails_at_covers() {
        let one = FSequence::constant(1).unwrap();
        assert_eq!(rising_coefficient(&one, 2, 3).unwrap(), big(0));
        assert_eq!(mobius_cobweb(&one, 2, 3).unwrap(), big(-1));
        let nat = FSequence::natural();
        assert_eq!(rising_coefficient(&nat, 1, 1).unwrap(), big(1));
    }

    #[test]
    fn whitney_numbers() {
        let nat = FSequence::natural();
        let two = FSequence::constant(2).unwrap();
        assert_eq!(whitney_first(&nat, 0).unwrap(), big(1));
        assert_eq!(whitney_first(&nat, 1).unwrap(), big(-1));
        assert_eq!(whitney_first(&nat, 2).unwrap(), big(0));
        assert_eq!(whitney_first(&two, 1).unwrap(), big(-2));
        assert_eq!(whitney_first(&two, 2).unwrap(), big(2));
        assert_eq!(whitney_second(&FSequence::fibonacci(), 5).unwrap(), BigUint::from(5u32));
        assert_eq!(whitney_second(&nat, 0).unwrap(), BigUint::one());
        let bad = nat.clone().with_zeroth(BigUint::from(3u32)).unwrap();
        assert!(matches!(whitney_first(&bad, 1), Err(Error::BottomNotSingleton(_))));

        let p = GradedPoset::cobweb_levels(&two.clone().with_bottom(), 0, 3).unwrap();
        let brute = whitney_first_by_oracle(&p).unwrap();
        let closed: Vec<_> = (0..=3).map(|r| whitney_first(&two, r).unwrap()).collect();
        assert_eq!(brute, closed);
    }

    #[test]
    fn characteristic_polynomials() {
        let nat = FSequence::natural();
        let two = FSequence::constant(2).unwrap();
        assert_eq!(char_poly(&nat, 2).unwrap(), Polynomial::from_i64_descending(&[1, -1, 0]));
        assert_eq!(char_poly(&two, 2).unwrap(), Polynomial::from_i64_descending(&[1, -2, 2]));
        assert_eq!(char_poly(&nat, 0).unwrap(), Polynomial::from_i64_descending(&[1]));
        assert_eq!(char_poly(&two, 2).unwrap().to_string(), "t^2 - 2t + 2");
        assert_eq!(char_poly(&nat, 2).unwrap().to_string(), "t^2 - t");
        assert!(char_poly(&FSequence::fibonacci(), 5).unwrap().is_monic());
        let p = char_poly(&two, 2).unwrap();
        assert_eq!(p.eval(&big(3)), big(5));
    }

    #[test]
    fn rank_one_terms() {
        assert_eq!(rank_one_shortcut(&FSequence::natural()).unwrap(), big(0));
        assert_eq!(rank_one_shortcut(&FSequence::constant(2).unwrap()).unwrap(), big(-2));
    }

    #[test]
    fn staircase_rows() {
        let p = GradedPoset::cobweb(&FSequence::natural(), 2).unwrap();
        assert_eq!(staircase(&p), "1 - -\n  1 0\n    1\n");
        let fib = GradedPoset::cobweb(&FSequence::fibonacci(), 4).unwrap();
        let runs = staircase_zero_runs(&staircase(&fib));
        assert_eq!(runs, vec![0, 0, 1, 0, 2, 1, 0]);
    }

    #[test]
    fn duality_transposes_mobius() {
        let p = GradedPoset::from_biadjacency(
            vec![1, 2, 2],
            vec![BoolMatrix::from_bits(&[&[1, 1]]), BoolMatrix::from_bits(&[&[1, 0], &[1, 1]])],
        )
        .unwrap();
        let d = p.dual();
        let mu = mobius_oracle(&p);
        let mu_dual = mobius_oracle(&d);
        let lp = p.natural_labeling();
        let ld = d.natural_labeling();
        for x in p.vertices() {
            for y in p.vertices() {
                let (i, j) = (lp.label(x).unwrap() - 1, lp.label(y).unwrap() - 1);
                let (a, b) = (ld.label(p.dual_vertex(y)).unwrap() - 1, ld.label(p.dual_vertex(x)).unwrap() - 1);
                assert_eq!(mu.get(i, j), mu_dual.get(a, b));
            }
        }
    }
}
