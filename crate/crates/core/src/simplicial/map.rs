use std::sync::Arc;

use thiserror::Error;

use super::complex::{Complex, Simplex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error("vertex image list has length {found}, source has {expected} vertex labels")]
    WrongLength { expected: usize, found: usize },
    #[error("vertex {vertex} maps to {image}, which is not a vertex of the target")]
    NotAVertex { vertex: usize, image: usize },
    #[error("image of {simplex:?} is {image:?}, which is not a simplex of the target")]
    NotSimplicial { simplex: Simplex, image: Simplex },
    #[error("maps do not compose: target of the first is not the source of the second")]
    NotComposable,
}

/// A vertex map that sends every simplex onto a simplex.
#[derive(Clone, Debug)]
pub struct SimplicialMap {
    source: Arc<Complex>,
    target: Arc<Complex>,
    images: Vec<usize>,
}

impl SimplicialMap {
    /// `images[v]` is the image of label `v`; labels that are not vertices
    /// of the source are ignored but must still be present.
    pub fn new(
        source: impl Into<Arc<Complex>>,
        target: impl Into<Arc<Complex>>,
        images: Vec<usize>,
    ) -> Result<Self, MapError> {
        let source = source.into();
        let target = target.into();
        if images.len() != source.vertex_count() {
            return Err(MapError::WrongLength {
                expected: source.vertex_count(),
                found: images.len(),
            });
        }
        for v in source.vertices() {
            if !target.contains(&[images[v]]) {
                return Err(MapError::NotAVertex {
                    vertex: v,
                    image: images[v],
                });
            }
        }
        let map = SimplicialMap {
            source,
            target,
            images,
        };
        for p in 1..map.source.degrees() {
            for s in map.source.simplices(p) {
                let image = map.image_of(s);
                if !map.target.contains(&image) {
                    return Err(MapError::NotSimplicial {
                        simplex: s.clone(),
                        image,
                    });
                }
            }
        }
        Ok(map)
    }

    pub fn identity(complex: impl Into<Arc<Complex>>) -> Self {
        let complex = complex.into();
        let images = (0..complex.vertex_count()).collect();
        SimplicialMap {
            source: complex.clone(),
            target: complex,
            images,
        }
    }

    pub fn source(&self) -> &Complex {
        &self.source
    }

    pub fn target(&self) -> &Complex {
        &self.target
    }

    pub fn source_arc(&self) -> &Arc<Complex> {
        &self.source
    }

    pub fn target_arc(&self) -> &Arc<Complex> {
        &self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, v: usize) -> usize {
        self.images[v]
    }

    /// Sorted, deduplicated image of a simplex.
    pub fn image_of(&self, simplex: &[usize]) -> Simplex {
        let mut image: Simplex = simplex.iter().map(|&v| self.images[v]).collect();
        image.sort_unstable();
        image.dedup();
        image
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &SimplicialMap) -> Result<SimplicialMap, MapError> {
        if *self.target != *other.source {
            return Err(MapError::NotComposable);
        }
        let images = self.images.iter().map(|&v| other.images[v]).collect();
        SimplicialMap::new(self.source.clone(), other.target.clone(), images)
    }

    /// True when the vertex map is a bijection on vertices and on simplices.
    pub fn is_isomorphism(&self) -> bool {
        if self.source.f_vector() != self.target.f_vector() {
            return false;
        }
        let mut seen = vec![false; self.target.vertex_count()];
        for v in self.source.vertices() {
            let w = self.images[v];
            if seen[w] {
                return false;
            }
            seen[w] = true;
        }
        (0..self.source.degrees()).all(|p| {
            let mut hit = vec![false; self.target.count(p)];
            self.source.simplices(p).iter().all(|s| {
                let image = self.image_of(s);
                match self.target.index_of(&image) {
                    Some(i) if image.len() == s.len() && !hit[i] => {
                        hit[i] = true;
                        true
                    }
                    _ => false,
                }
            })
        })
    }
}
