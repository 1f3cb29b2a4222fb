//! Standard minimal triangulations shipped as static facet lists.

use super::complex::{Complex, ComplexError};

pub const BUILTIN_NAMES: [&str; 5] = ["s1_3", "s2_4", "t2_7", "rp2_6", "cp2_9"];

const S1_3: &[&[usize]] = &[&[0, 1], &[0, 2], &[1, 2]];

const S2_4: &[&[usize]] = &[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]];

// Möbius' 7-vertex torus: triangles {i, i+1, i+3} and {i, i+2, i+3} mod 7.
const T2_7: &[&[usize]] = &[
    &[0, 1, 3], &[0, 1, 5], &[0, 2, 3], &[0, 2, 6], &[0, 4, 5], &[0, 4, 6], &[1, 2, 4],
    &[1, 2, 6], &[1, 3, 4], &[1, 5, 6], &[2, 3, 5], &[2, 4, 5], &[3, 4, 6], &[3, 5, 6],
];

// Hemi-icosahedron.
const RP2_6: &[&[usize]] = &[
    &[0, 1, 3], &[0, 1, 5], &[0, 2, 4], &[0, 2, 5], &[0, 3, 4],
    &[1, 2, 3], &[1, 2, 4], &[1, 4, 5], &[2, 3, 5], &[3, 4, 5],
];

// Kühnel's 9-vertex complex projective plane (3-neighborly, 36 facets).
const CP2_9: &[&[usize]] = &[
    &[0, 1, 2, 3, 4], &[0, 1, 2, 3, 5], &[0, 1, 2, 4, 8], &[0, 1, 2, 5, 6],
    &[0, 1, 2, 6, 7], &[0, 1, 2, 7, 8], &[0, 1, 3, 4, 6], &[0, 1, 3, 5, 6],
    &[0, 1, 4, 6, 7], &[0, 1, 4, 7, 8], &[0, 2, 3, 4, 5], &[0, 2, 4, 5, 8],
    &[0, 2, 5, 6, 8], &[0, 2, 6, 7, 8], &[0, 3, 4, 5, 7], &[0, 3, 4, 6, 7],
    &[0, 3, 5, 6, 8], &[0, 3, 5, 7, 8], &[0, 3, 6, 7, 8], &[0, 4, 5, 7, 8],
    &[1, 2, 3, 4, 8], &[1, 2, 3, 5, 7], &[1, 2, 3, 7, 8], &[1, 2, 5, 6, 7],
    &[1, 3, 4, 6, 8], &[1, 3, 5, 6, 8], &[1, 3, 5, 7, 8], &[1, 4, 5, 6, 7],
    &[1, 4, 5, 6, 8], &[1, 4, 5, 7, 8], &[2, 3, 4, 5, 7], &[2, 3, 4, 6, 7],
    &[2, 3, 4, 6, 8], &[2, 3, 6, 7, 8], &[2, 4, 5, 6, 7], &[2, 4, 5, 6, 8],
];

/// Raw facet data of a builtin, if the name is known.
pub fn builtin_facets(name: &str) -> Option<(usize, &'static [&'static [usize]])> {
    match name {
        "s1_3" => Some((3, S1_3)),
        "s2_4" => Some((4, S2_4)),
        "t2_7" => Some((7, T2_7)),
        "rp2_6" => Some((6, RP2_6)),
        "cp2_9" => Some((9, CP2_9)),
        _ => None,
    }
}

pub fn builtin(name: &str) -> Result<Complex, ComplexError> {
    let (n, facets) = builtin_facets(name).ok_or_else(|| {
        ComplexError::Construction(format!(
            "unknown builtin {name:?}; known: {}",
            BUILTIN_NAMES.join(", ")
        ))
    })?;
    Complex::from_maximal(n, facets.iter().map(|f| f.to_vec()))
}
