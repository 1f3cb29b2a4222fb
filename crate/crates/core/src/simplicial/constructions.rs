//! Standard constructions on ordered simplicial complexes.

use std::collections::BTreeSet;
use std::sync::Arc;

use super::certificate::is_closed_pseudomanifold;
use super::complex::{Complex, ComplexError, Simplex};
use super::map::SimplicialMap;

fn construction_error(msg: impl Into<String>) -> ComplexError {
    ComplexError::Construction(msg.into())
}

pub fn point() -> Complex {
    Complex::from_maximal(1, [vec![0]]).expect("point")
}

/// The full `n`-simplex with all its faces.
pub fn simplex(n: usize) -> Complex {
    Complex::from_maximal(n + 1, [(0..=n).collect()]).expect("simplex")
}

/// Boundary of the `(n+1)`-simplex: an `n`-sphere on `n + 2` vertices.
/// For `n = 0` this is two points.
pub fn boundary_sphere(n: usize) -> Complex {
    let vertices = n + 2;
    let facets = (0..vertices).map(|skip| (0..vertices).filter(|&v| v != skip).collect());
    Complex::from_maximal(vertices, facets).expect("sphere")
}

/// The cyclic `k`-gon.
pub fn circle(k: usize) -> Result<Complex, ComplexError> {
    if k < 3 {
        return Err(construction_error(format!(
            "a simplicial circle needs at least 3 vertices, got {k}"
        )));
    }
    let mut edges: Vec<Simplex> = (0..k - 1).map(|i| vec![i, i + 1]).collect();
    edges.push(vec![0, k - 1]);
    Complex::from_maximal(k, edges)
}

/// A product complex together with its two projections.
#[derive(Clone, Debug)]
pub struct Product {
    pub complex: Arc<Complex>,
    pub first: SimplicialMap,
    pub second: SimplicialMap,
}

impl Product {
    /// Label of the vertex `(a, b)`.
    pub fn vertex(&self, a: usize, b: usize) -> usize {
        a * self.second.target().vertex_count() + b
    }
}

/// Staircase triangulation of `|A| x |B|`.
///
/// The vertex `(a, b)` gets label `a * |B| + b`, so labels follow the
/// lexicographic order on pairs. The simplices inside a cell `σ x τ` are
/// the strictly increasing lattice paths from `(min σ, min τ)` to
/// `(max σ, max τ)` and all their faces.
pub fn product(a: &Complex, b: &Complex) -> Product {
    let nb = b.vertex_count();
    let mut generators = Vec::new();
    let max_a = a.maximal_simplices();
    let max_b = b.maximal_simplices();
    for s in &max_a {
        for t in &max_b {
            staircases(s, t, nb, &mut generators);
        }
    }
    let complex = Arc::new(
        Complex::from_maximal(a.vertex_count() * nb, generators).expect("staircases are increasing"),
    );
    let a = Arc::new(a.clone());
    let b = Arc::new(b.clone());
    let nv = complex.vertex_count();
    let first = SimplicialMap::new(complex.clone(), a, (0..nv).map(|v| v / nb.max(1)).collect())
        .expect("first projection");
    let second = SimplicialMap::new(complex.clone(), b, (0..nv).map(|v| v % nb.max(1)).collect())
        .expect("second projection");
    Product {
        complex,
        first,
        second,
    }
}

fn staircases(s: &[usize], t: &[usize], nb: usize, out: &mut Vec<Simplex>) {
    let mut path = Vec::with_capacity(s.len() + t.len() - 1);
    fn walk(
        s: &[usize],
        t: &[usize],
        nb: usize,
        i: usize,
        j: usize,
        path: &mut Vec<usize>,
        out: &mut Vec<Simplex>,
    ) {
        path.push(s[i] * nb + t[j]);
        if i + 1 == s.len() && j + 1 == t.len() {
            out.push(path.clone());
        } else {
            if i + 1 < s.len() {
                walk(s, t, nb, i + 1, j, path, out);
            }
            if j + 1 < t.len() {
                walk(s, t, nb, i, j + 1, path, out);
            }
        }
        path.pop();
    }
    walk(s, t, nb, 0, 0, &mut path, out);
}

/// `T^n` as the staircase product of `n` copies of the 3-vertex circle.
pub fn torus(n: usize) -> Complex {
    let c = circle(3).expect("circle");
    let mut acc = point();
    for _ in 0..n {
        acc = (*product(&acc, &c).complex).clone();
    }
    acc
}

/// Connected sum along the top simplices `sigma_a` and `sigma_b`.
///
/// `matching[i] = (x, y)` glues vertex `x` of `sigma_a` to vertex `y` of
/// `sigma_b`. Vertices of `a` keep their labels; the remaining vertices of
/// `b` follow in increasing order.
pub fn connected_sum(
    a: &Complex,
    b: &Complex,
    sigma_a: &[usize],
    sigma_b: &[usize],
    matching: &[(usize, usize)],
) -> Result<Complex, ComplexError> {
    let n = match (a.dim(), b.dim()) {
        (Some(da), Some(db)) if da == db => da,
        (da, db) => {
            return Err(construction_error(format!(
                "connected sum needs equal dimensions, got {da:?} and {db:?}"
            )))
        }
    };
    for (name, x, s) in [("first", a, sigma_a), ("second", b, sigma_b)] {
        if !is_closed_pseudomanifold(x) {
            return Err(construction_error(format!(
                "{name} summand is not a closed pseudomanifold"
            )));
        }
        if s.len() != n + 1 || !x.contains(s) {
            return Err(construction_error(format!(
                "{s:?} is not a top simplex of the {name} summand"
            )));
        }
    }
    let from: BTreeSet<usize> = matching.iter().map(|m| m.0).collect();
    let to: BTreeSet<usize> = matching.iter().map(|m| m.1).collect();
    if matching.len() != n + 1
        || from != sigma_a.iter().copied().collect()
        || to != sigma_b.iter().copied().collect()
    {
        return Err(construction_error(format!(
            "matching {matching:?} is not a bijection between {sigma_a:?} and {sigma_b:?}"
        )));
    }

    let na = a.vertex_count();
    let mut relabel = vec![usize::MAX; b.vertex_count()];
    for &(x, y) in matching {
        relabel[y] = x;
    }
    let mut next = na;
    for v in b.vertices() {
        if relabel[v] == usize::MAX {
            relabel[v] = next;
            next += 1;
        }
    }
    let mut generators: Vec<Simplex> = a
        .maximal_simplices()
        .into_iter()
        .filter(|s| s.as_slice() != sigma_a)
        .collect();
    for s in b.maximal_simplices() {
        if s.as_slice() == sigma_b {
            continue;
        }
        let mut image: Simplex = s.iter().map(|&v| relabel[v]).collect();
        image.sort_unstable();
        generators.push(image);
    }
    Complex::from_maximal(next, generators)
}

/// Barycentric subdivision with its carrier map.
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub complex: Arc<Complex>,
    /// Sends the barycenter of `τ` to the least vertex of `τ`.
    pub carrier: SimplicialMap,
    /// `barycenters[v]` is the simplex of the original complex whose barycenter has label `v`.
    pub barycenters: Vec<Simplex>,
}

/// Barycenters are labelled by dimension, then lexicographically.
pub fn barycentric_subdivision(x: &Complex) -> Subdivision {
    let barycenters: Vec<Simplex> = (0..x.degrees()).flat_map(|p| x.simplices(p).iter().cloned()).collect();
    let offsets: Vec<usize> = (0..x.degrees())
        .scan(0, |acc, p| {
            let start = *acc;
            *acc += x.count(p);
            Some(start)
        })
        .collect();
    let label = |s: &[usize]| offsets[s.len() - 1] + x.index_of(s).expect("face of x");

    let mut generators = Vec::new();
    for s in x.maximal_simplices() {
        let mut perm = s.clone();
        for_each_permutation(&mut perm, 0, &mut |order| {
            let mut chain: Simplex = (1..=order.len())
                .map(|k| {
                    let mut face = order[..k].to_vec();
                    face.sort_unstable();
                    label(&face)
                })
                .collect();
            chain.sort_unstable();
            generators.push(chain);
        });
    }
    let complex =
        Arc::new(Complex::from_maximal(barycenters.len(), generators).expect("flags are increasing"));
    let images = barycenters.iter().map(|s| s[0]).collect();
    let carrier = SimplicialMap::new(complex.clone(), Arc::new(x.clone()), images).expect("carrier map");
    Subdivision {
        complex,
        carrier,
        barycenters,
    }
}

fn for_each_permutation(items: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        f(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        for_each_permutation(items, k + 1, f);
        items.swap(k, i);
    }
}

/// Mapping torus of a simplicial automorphism, built from three prism
/// layers `F x [0,1]`, `F x [1,2]`, `F x [2,3]` with `(x, 3)` glued to
/// `(f(x), 0)`. Vertex `(x, layer)` has label `layer * |F| + x`.
pub fn mapping_torus(f: &SimplicialMap) -> Result<Complex, ComplexError> {
    if f.source() != f.target() {
        return Err(construction_error("mapping torus needs a self-map"));
    }
    if !f.is_isomorphism() {
        return Err(construction_error("mapping torus needs a simplicial automorphism"));
    }
    let fiber = f.source();
    let n = fiber.vertex_count();
    let mut generators = Vec::new();
    for s in fiber.maximal_simplices() {
        for layer in 0..3 {
            for split in 0..s.len() {
                let mut prism: Simplex = s[..=split].iter().map(|&v| layer * n + v).collect();
                for &v in &s[split..] {
                    prism.push(if layer < 2 { (layer + 1) * n + v } else { f.apply(v) });
                }
                prism.sort_unstable();
                generators.push(prism);
            }
        }
    }
    Complex::from_maximal(3 * n, generators)
}

/// `A ⊔ B`; the labels of `b` are shifted past those of `a`.
pub fn disjoint_union(a: &Complex, b: &Complex) -> Complex {
    let shift = a.vertex_count();
    let generators = a
        .maximal_simplices()
        .into_iter()
        .chain(b.maximal_simplices().into_iter().map(|s| s.iter().map(|v| v + shift).collect()));
    Complex::from_maximal(shift + b.vertex_count(), generators).expect("disjoint union")
}

/// Cone with apex labelled `vertex_count`.
pub fn cone(x: &Complex) -> Complex {
    let apex = x.vertex_count();
    let mut generators: Vec<Simplex> = x
        .maximal_simplices()
        .into_iter()
        .map(|mut s| {
            s.push(apex);
            s
        })
        .collect();
    generators.push(vec![apex]);
    Complex::from_maximal(apex + 1, generators).expect("cone")
}

/// Unreduced suspension with apexes labelled `vertex_count` and `vertex_count + 1`.
pub fn suspension(x: &Complex) -> Complex {
    let n = x.vertex_count();
    let mut generators = vec![vec![n], vec![n + 1]];
    for s in x.maximal_simplices() {
        for apex in [n, n + 1] {
            let mut t = s.clone();
            t.push(apex);
            generators.push(t);
        }
    }
    Complex::from_maximal(n + 2, generators).expect("suspension")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::builtins::builtin;
    use crate::simplicial::certificate::orientable_certificate;

    #[test]
    fn spheres() {
        assert_eq!(boundary_sphere(0).f_vector(), vec![2]);
        assert_eq!(boundary_sphere(1).f_vector(), vec![3, 3]);
        assert_eq!(boundary_sphere(2).euler_characteristic(), 2);
        assert_eq!(boundary_sphere(3).f_vector()[0], 5);
        assert_eq!(boundary_sphere(3).euler_characteristic(), 0);
    }

    #[test]
    fn circles() {
        assert_eq!(circle(3).unwrap().edges(), &[vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(circle(4).unwrap().count(1), 4);
        for k in 3..=10 {
            assert_eq!(circle(k).unwrap().euler_characteristic(), 0);
        }
        assert!(circle(2).is_err());
    }

    #[test]
    fn products() {
        let c = circle(3).unwrap();
        let t = product(&c, &c);
        assert_eq!(t.complex.f_vector(), vec![9, 27, 18]);
        let pb = product(&point(), &c);
        assert_eq!(pb.complex.f_vector(), c.f_vector());
        let square = product(&simplex(1), &simplex(1));
        assert_eq!(
            square.complex.maximal_simplices(),
            vec![vec![0, 1, 3], vec![0, 2, 3]]
        );
        assert_eq!(torus(3).f_vector(), vec![27, 189, 324, 162]);
        assert_eq!(torus(4).f_vector(), vec![81, 1215, 4050, 4860, 1944]);
    }

    #[test]
    fn connected_sums() {
        let s2 = builtin("s2_4").unwrap();
        let t2 = builtin("t2_7").unwrap();
        let m: Vec<(usize, usize)> = vec![(0, 0), (1, 1), (2, 2)];
        let ss = connected_sum(&s2, &s2, &[0, 1, 2], &[0, 1, 2], &m).unwrap();
        assert_eq!(ss.euler_characteristic(), 2);
        let tt = connected_sum(&t2, &t2, &[0, 1, 3], &[0, 1, 3], &[(0, 0), (1, 1), (3, 3)]).unwrap();
        assert_eq!(tt.euler_characteristic(), -2);
        assert!(orientable_certificate(&tt).is_some());

        assert!(connected_sum(&s2, &t2, &[0, 1, 2], &[0, 1, 2], &m).is_err());
        assert!(connected_sum(&s2, &s2, &[0, 1, 2], &[0, 1, 2], &[(0, 0), (1, 0), (2, 2)]).is_err());
        assert!(connected_sum(&s2, &s2, &[0, 1], &[0, 1, 2], &m).is_err());
    }

    #[test]
    fn subdivisions() {
        let p = barycentric_subdivision(&point());
        assert_eq!(p.complex.f_vector(), vec![1]);
        let e = barycentric_subdivision(&simplex(1));
        assert_eq!(e.complex.f_vector(), vec![3, 2]);
        let t = barycentric_subdivision(&simplex(2));
        assert_eq!(t.complex.count(2), 6);
        assert_eq!(t.complex.euler_characteristic(), 1);
        let s = barycentric_subdivision(&builtin("s2_4").unwrap());
        assert_eq!(s.complex.f_vector()[0], 14);
        assert_eq!(s.complex.euler_characteristic(), 2);
    }

    #[test]
    fn mapping_tori() {
        let pt = Arc::new(point());
        let circ = mapping_torus(&SimplicialMap::identity(pt)).unwrap();
        assert_eq!(circ.f_vector(), vec![3, 3]);

        let c = Arc::new(circle(3).unwrap());
        let torus = mapping_torus(&SimplicialMap::identity(c.clone())).unwrap();
        assert_eq!(torus.euler_characteristic(), 0);
        assert!(orientable_certificate(&torus).is_some());

        let reflection = SimplicialMap::new(c.clone(), c.clone(), vec![0, 2, 1]).unwrap();
        let klein = mapping_torus(&reflection).unwrap();
        assert_eq!(klein.euler_characteristic(), 0);
        assert!(orientable_certificate(&klein).is_none());

        let collapse = SimplicialMap::new(c.clone(), c, vec![0, 0, 1]).unwrap();
        assert!(mapping_torus(&collapse).is_err());
    }

    #[test]
    fn cones_and_suspensions() {
        let c = circle(3).unwrap();
        assert_eq!(cone(&c).euler_characteristic(), 1);
        assert_eq!(suspension(&c).euler_characteristic(), 2);
        assert!(orientable_certificate(&suspension(&c)).is_some());
        assert_eq!(disjoint_union(&point(), &point()).euler_characteristic(), 2);
    }
}
