//! Resolving command-line arguments to complexes and weight systems.

use std::fs;
use std::path::Path;

use novikov::local_system::WeightCocycle;
use novikov::random::integral_h1_basis;
use novikov::scalar::parse_rational;
use novikov::simplicial::{boundary_sphere, builtin, circle, point, simplex, torus, Complex, BUILTIN_NAMES};

use crate::documents::{ComplexDocument, WeightDocument};
use crate::CliError;

pub const COMPLEX_HELP: &str = "a complex file, or builtin:NAME with NAME one of s1_3, s2_4, t2_7, rp2_6, cp2_9, \
point, circleK, torusN (staircase product of N triangles), sphereN (boundary of the (N+1)-simplex, an N-sphere), simplexN";

pub const WEIGHTS_HELP: &str = "a weight file, trivial, holonomy:T (first integral class of H1 with base T), \
or class:I:T (integral class I with base T)";

pub fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn numbered(name: &str, prefix: &str) -> Option<usize> {
    name.strip_prefix(prefix)?.parse().ok()
}

fn generated(name: &str) -> Result<Option<Complex>, CliError> {
    if name == "point" {
        return Ok(Some(point()));
    }
    if let Some(k) = numbered(name, "circle") {
        return Ok(Some(circle(k)?));
    }
    if let Some(n) = numbered(name, "torus").filter(|&n| n >= 1) {
        return Ok(Some(torus(n)));
    }
    if let Some(n) = numbered(name, "sphere") {
        return Ok(Some(boundary_sphere(n)));
    }
    if let Some(n) = numbered(name, "simplex") {
        return Ok(Some(simplex(n)));
    }
    Ok(None)
}

/// A complex and the name it was given, if any.
pub fn load_complex(arg: &str) -> Result<(Complex, Option<String>), CliError> {
    if let Some(name) = arg.strip_prefix("builtin:") {
        if BUILTIN_NAMES.contains(&name) {
            return Ok((builtin(name)?, Some(name.to_string())));
        }
        return match generated(name)? {
            Some(x) => Ok((x, Some(name.to_string()))),
            None => Err(CliError::Input(format!("unknown builtin {name:?}; expected {COMPLEX_HELP}"))),
        };
    }
    let path = Path::new(arg);
    let doc = ComplexDocument::parse(arg, &read(path)?)?;
    let x = doc.to_complex()?;
    Ok((x, doc.name))
}

fn integral_class(x: &Complex, index: usize, base: &str) -> Result<WeightCocycle, CliError> {
    let base = parse_rational(base).ok_or_else(|| CliError::Input(format!("{base:?} is not a rational literal")))?;
    let basis = integral_h1_basis(x);
    let class = basis.get(index).ok_or_else(|| {
        CliError::Input(format!("class {index} requested, but H1 of the complex has dimension {}", basis.len()))
    })?;
    Ok(WeightCocycle::from_integral_class(x, class, &base)?)
}

pub fn load_weights(arg: Option<&str>, x: &Complex) -> Result<WeightCocycle, CliError> {
    let Some(arg) = arg else {
        return Ok(WeightCocycle::trivial(x));
    };
    if arg == "trivial" {
        return Ok(WeightCocycle::trivial(x));
    }
    if let Some(base) = arg.strip_prefix("holonomy:") {
        return integral_class(x, 0, base);
    }
    if let Some(rest) = arg.strip_prefix("class:") {
        let (index, base) = rest
            .split_once(':')
            .ok_or_else(|| CliError::Input(format!("expected class:I:T, got {arg:?}")))?;
        let index = index
            .parse()
            .map_err(|_| CliError::Input(format!("class index {index:?} is not a number")))?;
        return integral_class(x, index, base);
    }
    WeightDocument::parse(arg, &read(Path::new(arg))?)?.to_cocycle(x)
}

/// Parses `"1,2,0"` into a vertex map.
pub fn parse_images(text: &str) -> Result<Vec<usize>, CliError> {
    text.split(',')
        .map(|v| {
            v.trim()
                .parse()
                .map_err(|_| CliError::Input(format!("vertex image {v:?} is not a number")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use novikov::cohomology::betti;

    #[test]
    fn builtin_names() {
        assert_eq!(load_complex("builtin:t2_7").unwrap().0.f_vector(), vec![7, 21, 14]);
        assert_eq!(load_complex("builtin:torus4").unwrap().0.f_vector()[0], 81);
        assert_eq!(load_complex("builtin:sphere2").unwrap().0.f_vector(), vec![4, 6, 4]);
        assert_eq!(load_complex("builtin:circle5").unwrap().0.f_vector(), vec![5, 5]);
        assert!(load_complex("builtin:circle2").is_err());
        assert!(load_complex("builtin:nope").is_err());
    }

    #[test]
    fn holonomy_weights_kill_the_circle() {
        let (s, _) = load_complex("builtin:s1_3").unwrap();
        let w = load_weights(Some("holonomy:2"), &s).unwrap();
        assert_eq!(betti(&s, &w).unwrap(), vec![0, 0]);
        assert!(load_weights(Some("class:1:2"), &s).is_err());
        assert!(load_weights(Some("holonomy:0"), &s).is_err());
    }
}
