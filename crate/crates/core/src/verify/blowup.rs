use num_traits::One;

use super::{Engine, Report, VerifyError};
use crate::cohomology::TwistedComplex;
use crate::local_system::WeightCocycle;
use crate::scalar::Rational;
use crate::simplicial::{builtin, connected_sum, orientable_certificate, Complex, Simplex};

/// Connected sum `X # CP^2` with the weight system carried across.
#[derive(Clone, Debug)]
pub struct BlowupModel {
    pub complex: Complex,
    pub weights: WeightCocycle,
    /// Removed top simplex of `X`, whose vertices keep their labels.
    pub glue_simplex: Simplex,
    /// Removed top simplex of the 9-vertex `CP^2`.
    pub cp2_simplex: Simplex,
}

/// Builds `X # CP^2` along the first top simplex of each summand, matching
/// vertices in increasing order.
///
/// `w` is first gauge-normalized to weight 1 on the closed glue simplex;
/// every edge of the result touching a `CP^2` vertex then gets weight 1,
/// which is a cocycle because those edges only meet the glue simplex.
pub fn blowup_model(x: &Complex, w: &WeightCocycle) -> Result<BlowupModel, VerifyError> {
    let cp2 = builtin("cp2_9")?;
    if x.dim() != Some(4) {
        return Err(VerifyError::Refused(format!(
            "blow-up model needs a 4-dimensional complex, got dimension {:?}",
            x.dim()
        )));
    }
    if orientable_certificate(x).is_none() {
        return Err(VerifyError::Refused(
            "no orientation certificate: not a closed connected orientable pseudomanifold".into(),
        ));
    }
    let glue_simplex = x.simplices(4)[0].clone();
    let cp2_simplex = cp2.simplices(4)[0].clone();
    let matching: Vec<(usize, usize)> = glue_simplex.iter().copied().zip(cp2_simplex.iter().copied()).collect();
    let complex = connected_sum(x, &cp2, &glue_simplex, &cp2_simplex, &matching)?;

    let region = x.subcomplex(std::slice::from_ref(&glue_simplex))?;
    let (normalized, _) = w.gauge_normalize_on(x, &region)?;
    let old = x.vertex_count();
    let weights = WeightCocycle::from_fn(&complex, |i, j| {
        if j < old {
            normalized.weight(i, j).expect("edges among old vertices are edges of X").clone()
        } else {
            Rational::one()
        }
    })?;
    Ok(BlowupModel {
        complex,
        weights,
        glue_simplex,
        cp2_simplex,
    })
}

/// Blowing up a point adds one class in degree 2:
/// `betti(X # CP^2, w~)[k] = betti(X, w)[k] + [k = 2]`.
pub fn verify_blowup_dims(engine: &Engine, x: &Complex, w: &WeightCocycle) -> Result<Report, VerifyError> {
    let model = blowup_model(x, w)?;
    engine.progress(&format!("blow-up model has f-vector {:?}", model.complex.f_vector()));
    let base = engine.betti("X", &TwistedComplex::new(x.clone(), w)?);
    let blown = engine.betti("X # CP2", &TwistedComplex::new(model.complex.clone(), &model.weights)?);
    let expected: Vec<usize> = base.iter().enumerate().map(|(k, b)| b + usize::from(k == 2)).collect();
    let mut report = Report::new(
        "blowup",
        format!("X with f-vector {:?}, blown up at one point", x.f_vector()),
    )
    .sides("betti(X # CP2, w~)", &blown, "betti(X, w) + e2", &expected);
    report.compare_by_degree();
    report.note(format!("betti(X, w) = {base:?}"));
    report.note("point blow-up modeled as the connected sum with the 9-vertex CP2 along one top simplex; the orientation class of the gluing is not checked");
    report.notes.extend(engine.mode_note());
    Ok(report)
}
