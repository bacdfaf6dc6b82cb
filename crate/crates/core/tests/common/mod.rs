use cobweb::{BoolMatrix, GradedPoset};

/// All graded posets with at most `max` vertices.
pub fn all_graded(max: usize) -> Vec<GradedPoset> {
    fn compositions(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        (1..=n)
            .flat_map(|first| {
                compositions(n - first).into_iter().map(move |mut rest| {
                    rest.insert(0, first);
                    rest
                })
            })
            .collect()
    }
    let mut out = Vec::new();
    for v in 1..=max {
        for sizes in compositions(v) {
            let slots: usize = sizes.windows(2).map(|w| w[0] * w[1]).sum();
            for mask in 0u64..(1 << slots) {
                let mut bit = 0;
                let mats = sizes
                    .windows(2)
                    .map(|w| {
                        let mut m = BoolMatrix::zeros(w[0], w[1]);
                        for i in 0..w[0] {
                            for j in 0..w[1] {
                                m.set(i, j, mask >> bit & 1 == 1);
                                bit += 1;
                            }
                        }
                        m
                    })
                    .collect();
                out.push(GradedPoset::from_biadjacency(sizes.clone(), mats).unwrap());
            }
        }
    }
    out
}
