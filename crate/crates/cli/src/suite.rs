//! The `check` command: closed forms against brute-force computations for
//! one sequence.

use std::fmt::Write;

use cobweb::hyperbox::verify_block_partition;
use cobweb::incidence::{
    char_poly, char_poly_by_oracle, coding_matrix, mobius_grid, mobius_oracle, staircase, staircase_zero_runs,
    whitney_first, whitney_first_by_oracle, zeta_closure, zeta_cobweb_closed,
};
use cobweb::relations::{chain_tuples, compose_nary, is_identifiable, level_relations};
use cobweb::structure::{cobweb_realizer, is_n_free, verify_realizer};
use cobweb::{FSequence, FinitePoset, GradedPoset, Result};
use num_bigint::{BigInt, BigUint};

/// Matrix checks are skipped above this many vertices unless `--cap` says otherwise.
pub const DEFAULT_VERTEX_CAP: u64 = 400;

enum Status {
    Pass,
    Fail(String),
    Skipped(String),
}

pub struct Report {
    header: String,
    lines: Vec<(String, Status)>,
}

impl Report {
    pub fn passed(&self) -> bool {
        !self.lines.iter().any(|(_, s)| matches!(s, Status::Fail(_)))
    }

    pub fn render(&self) -> String {
        let mut text = format!("{}\n", self.header);
        for (name, status) in &self.lines {
            let _ = match status {
                Status::Pass => writeln!(text, "ok    {name}"),
                Status::Fail(why) => writeln!(text, "FAIL  {name}: {why}"),
                Status::Skipped(why) => writeln!(text, "skip  {name}: {why}"),
            };
        }
        let failed = self.lines.iter().filter(|(_, s)| matches!(s, Status::Fail(_))).count();
        let _ = writeln!(text, "{} checks, {failed} failed", self.lines.len());
        text
    }
}

fn status(ok: bool, why: impl FnOnce() -> String) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail(why())
    }
}

pub fn run(f: &FSequence, n: usize, vertex_cap: u64) -> Result<Report> {
    let p = GradedPoset::cobweb(f, n)?;
    let v = p.vertex_count();
    let mut lines = Vec::new();
    let small = v as u64 <= vertex_cap;
    let too_big = || Status::Skipped(format!("{v} vertices exceed the cap {vertex_cap}"));

    lines.push(("mobius closed form inverts zeta".to_string(), if small { mobius_checks(f, &p)? } else { too_big() }));
    lines.push(("bracket zeta equals the order closure".to_string(), if small { bracket_check(f, &p)? } else { too_big() }));

    let product: BigUint = (1..=n).map(|t| f.value(t)).product::<Result<BigUint>>()?;
    let chains = p.max_chain_count();
    lines.push((
        "maximal chain count is the level product".to_string(),
        status(chains == product, || format!("{chains} chains, product {product}")),
    ));
    lines.push(("chain blocks partition every layer".to_string(), partition_check(f, n)?));

    let bottomed = GradedPoset::cobweb_levels(&f.clone().with_bottom(), 0, n)?;
    if bottomed.vertex_count() as u64 <= vertex_cap {
        let oracle = whitney_first_by_oracle(&bottomed)?;
        let closed = (0..=n).map(|r| whitney_first(f, r)).collect::<Result<Vec<BigInt>>>()?;
        lines.push((
            "Whitney numbers match the inverse".to_string(),
            status(oracle == closed, || format!("closed {closed:?}, inverse {oracle:?}")),
        ));
        let (closed, oracle) = (char_poly(f, n)?, char_poly_by_oracle(&bottomed)?);
        lines.push((
            "characteristic polynomial matches the inverse".to_string(),
            status(closed == oracle, || format!("closed {closed}, inverse {oracle}")),
        ));
    } else {
        lines.push(("Whitney numbers and characteristic polynomial".to_string(), too_big()));
    }

    if small {
        let fp = FinitePoset::from_graded(&p);
        lines.push(("cobweb is N-free".to_string(), status(is_n_free(&fp), || "found an N".into())));
        let (q, r) = cobweb_realizer(f, n)?;
        let orders: Vec<Vec<usize>> = r.extensions.iter().map(|e| e.order().to_vec()).collect();
        lines.push((
            "two extensions realize the order".to_string(),
            status(verify_realizer(&q, &orders)?, || "intersection differs from the order".into()),
        ));
        let runs = staircase_zero_runs(&staircase(&p));
        let expected: Vec<usize> = p.sizes().iter().flat_map(|&s| (1..=s).map(move |j| s - j)).collect();
        lines.push(("staircase zero runs".to_string(), status(runs == expected, || format!("{runs:?}"))));
    } else {
        lines.push(("N-freeness, realizer and staircase".to_string(), too_big()));
    }

    let parts = level_relations(&p);
    let relations = if parts.is_empty() {
        Status::Skipped("a single level has no cover relations".into())
    } else {
        let composed = compose_nary(&parts)?;
        status(is_identifiable(&p) && composed == chain_tuples(&p), || "composed relation differs from the chains".into())
    };
    lines.push(("level relations compose to the chains".to_string(), relations));

    let admissible = f.is_admissible(n)?;
    let header = match admissible.witness {
        None => format!("{f}, levels 1..{n}, {v} vertices, admissible up to {n}"),
        Some((a, b)) => format!("{f}, levels 1..{n}, {v} vertices, F-nomial({a}, {b}) is not an integer"),
    };
    Ok(Report { header, lines })
}

fn mobius_checks(f: &FSequence, p: &GradedPoset) -> Result<Status> {
    let zeta = zeta_closure(p);
    let closed = coding_matrix(f, p.last_level())?.expand(f)?;
    if !zeta.mul(&closed)?.is_identity() {
        return Ok(Status::Fail("zeta times closed-form mobius is not the identity".into()));
    }
    let oracle = mobius_oracle(p);
    if closed != oracle {
        return Ok(Status::Fail("closed form differs from the triangular inverse".into()));
    }
    let verts: Vec<_> = p.vertices().collect();
    for (i, &x) in verts.iter().enumerate() {
        for (j, &y) in verts.iter().enumerate() {
            if &mobius_grid(f, x, y)? != oracle.get(i, j) {
                return Ok(Status::Fail(format!("grid formula wrong at {x}, {y}")));
            }
        }
    }
    Ok(Status::Pass)
}

fn bracket_check(f: &FSequence, p: &GradedPoset) -> Result<Status> {
    let zeta = zeta_closure(p);
    for x in 1..=zeta.size() {
        for y in 1..=zeta.size() {
            if BigInt::from(zeta_cobweb_closed(f, p.last_level(), x, y)?) != *zeta.get(x - 1, y - 1) {
                return Ok(Status::Fail(format!("labels {x}, {y}")));
            }
        }
    }
    Ok(Status::Pass)
}

fn partition_check(f: &FSequence, n: usize) -> Result<Status> {
    let mut unmaterialized = 0;
    for k in 0..n {
        let r = verify_block_partition(f, n, k)?;
        if !r.identity_holds {
            return Ok(Status::Fail(format!("counting identity fails for k = {k}")));
        }
        match r.partition {
            Some(part) if !part.is_valid() => return Ok(Status::Fail(format!("invalid partition for k = {k}"))),
            Some(_) => {}
            None => unmaterialized += 1,
        }
    }
    Ok(if unmaterialized == n {
        Status::Skipped("no layer small enough to materialize".into())
    } else {
        Status::Pass
    })
}
