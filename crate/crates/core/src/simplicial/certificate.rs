use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use super::complex::{remove_vertex, Complex, Simplex};

/// Evidence that a complex is a closed, connected, orientable pseudomanifold.
#[derive(Clone, Debug)]
pub struct OrientedManifoldCertificate {
    pub complex: Arc<Complex>,
    pub top_dimension: usize,
    /// `orientation[i]` is `+1` or `-1` for the `i`-th top simplex.
    pub orientation: Vec<i8>,
}

/// Pure of dimension `n >= 1`, with every `(n-1)`-simplex a face of exactly two top simplices.
pub fn is_closed_pseudomanifold(x: &Complex) -> bool {
    let Some(n) = x.dim() else { return false };
    if n == 0 {
        return false;
    }
    if x.maximal_simplices().iter().any(|s| s.len() != n + 1) {
        return false;
    }
    ridge_incidence(x).iter().all(|tops| tops.len() == 2)
}

/// For each `(n-1)`-simplex, the `(top index, omitted position)` pairs containing it.
fn ridge_incidence(x: &Complex) -> Vec<Vec<(usize, usize)>> {
    let n = x.dim().expect("nonempty");
    let mut incidence = vec![Vec::new(); x.count(n - 1)];
    for (t, s) in x.simplices(n).iter().enumerate() {
        for i in 0..s.len() {
            let ridge = x.index_of(&remove_vertex(s, i)).expect("face-closed");
            incidence[ridge].push((t, i));
        }
    }
    incidence
}

/// Propagates orientations across shared ridges, starting from `+1` on the
/// first top simplex. Returns `None` if the complex is not a closed
/// connected pseudomanifold or if propagation reaches a contradiction.
pub fn orientable_certificate(x: &Complex) -> Option<OrientedManifoldCertificate> {
    if !is_closed_pseudomanifold(x) {
        return None;
    }
    let n = x.dim()?;
    let tops = x.simplices(n);
    let incidence = ridge_incidence(x);
    let mut neighbours: HashMap<usize, Vec<(usize, usize, usize)>> = HashMap::new();
    for pair in &incidence {
        let [(t1, i1), (t2, i2)] = [pair[0], pair[1]];
        neighbours.entry(t1).or_default().push((i1, t2, i2));
        neighbours.entry(t2).or_default().push((i2, t1, i1));
    }
    let mut orientation = vec![0i8; tops.len()];
    orientation[0] = 1;
    let mut queue = VecDeque::from([0usize]);
    while let Some(t) = queue.pop_front() {
        for &(i, u, j) in neighbours.get(&t).map_or(&[][..], Vec::as_slice) {
            // Induced orientations on the shared ridge must cancel.
            let parity = if (i + j) % 2 == 0 { 1 } else { -1 };
            let want = -orientation[t] * parity;
            match orientation[u] {
                0 => {
                    orientation[u] = want;
                    queue.push_back(u);
                }
                s if s != want => return None,
                _ => {}
            }
        }
    }
    if orientation.contains(&0) {
        return None;
    }
    Some(OrientedManifoldCertificate {
        complex: Arc::new(x.clone()),
        top_dimension: n,
        orientation,
    })
}

impl OrientedManifoldCertificate {
    /// The fundamental cycle: top simplices with their signs.
    pub fn fundamental_cycle(&self) -> Vec<(Simplex, i8)> {
        self.complex
            .simplices(self.top_dimension)
            .iter()
            .cloned()
            .zip(self.orientation.iter().copied())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::builtins::builtin;
    use crate::simplicial::constructions::{disjoint_union, simplex};

    #[test]
    fn orientability_of_builtins() {
        assert!(orientable_certificate(&builtin("s2_4").unwrap()).is_some());
        assert!(orientable_certificate(&builtin("t2_7").unwrap()).is_some());
        assert!(orientable_certificate(&builtin("cp2_9").unwrap()).is_some());
        assert!(orientable_certificate(&builtin("rp2_6").unwrap()).is_none());
        assert!(is_closed_pseudomanifold(&builtin("rp2_6").unwrap()));
    }

    #[test]
    fn non_closed_and_disconnected() {
        assert!(!is_closed_pseudomanifold(&simplex(2)));
        let s = builtin("s2_4").unwrap();
        let two = disjoint_union(&s, &s);
        assert!(is_closed_pseudomanifold(&two));
        assert!(orientable_certificate(&two).is_none());
    }

    #[test]
    fn fundamental_cycle_has_zero_boundary() {
        let cert = orientable_certificate(&builtin("t2_7").unwrap()).unwrap();
        let mut boundary: HashMap<Simplex, i64> = HashMap::new();
        for (s, sign) in cert.fundamental_cycle() {
            for i in 0..s.len() {
                let coef = if i % 2 == 0 { sign as i64 } else { -(sign as i64) };
                *boundary.entry(remove_vertex(&s, i)).or_default() += coef;
            }
        }
        assert!(boundary.values().all(|&c| c == 0));
    }
}
