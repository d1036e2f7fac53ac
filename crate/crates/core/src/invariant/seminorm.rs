use crate::error::{Error, Result};
use crate::hharmonic::peter_weyl_project;
use crate::sphere::SphereQuadrature;

use super::CoefficientSequence;

#[derive(Debug, Clone, PartialEq)]
pub struct SemiNorm {
    /// Σ_{m ≤ m_max} c_m ‖f_m‖².
    pub value: f64,
    /// ‖f_m‖² on the sphere for m = 0..=m_max.
    pub components: Vec<f64>,
    /// c_{m_max} ‖f_{m_max}‖², the last summand.
    pub tail: f64,
}

impl SemiNorm {
    /// |other − self| / |self|.
    pub fn relative_deviation(&self, other: &SemiNorm) -> f64 {
        (other.value - self.value).abs() / self.value.abs()
    }
}

/// `Σ_m c_m ‖f_m‖²` for an H-harmonic f, with the components recovered from
/// samples of f on the sphere of the given radius.
pub fn semi_norm_sq<F>(
    f: F,
    c: &CoefficientSequence,
    m_max: usize,
    radius: f64,
    quad: &SphereQuadrature,
) -> Result<SemiNorm>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    if m_max > c.m_max() {
        return Err(Error::Degree {
            requested: m_max,
            max: c.m_max(),
        });
    }
    let pw = peter_weyl_project(f, m_max, radius, quad)?;
    let components: Vec<f64> = (0..=m_max).map(|m| pw.norm_sq(m)).collect();
    let value = components.iter().enumerate().map(|(m, v)| c.get(m) * v).sum();
    Ok(SemiNorm {
        value,
        tail: c.get(m_max) * components[m_max],
        components,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hharmonic::SolidHarmonic;
    use crate::invariant::invariant_reference;

    #[test]
    fn constants_have_zero_seminorm() {
        let q = SphereQuadrature::build(3, 12).unwrap();
        let c = invariant_reference(3, 6).unwrap();
        let s = semi_norm_sq(|_| 1.0, &c, 6, 0.6, &q).unwrap();
        assert!(s.value.abs() < 1e-12);
        assert!((s.components[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn degree_one_solid_harmonic() {
        let q = SphereQuadrature::build(3, 12).unwrap();
        let c = invariant_reference(3, 4).unwrap();
        let h = SolidHarmonic::new(1, vec![1.0, 0.0, 0.0]).unwrap();
        let s = semi_norm_sq(|x| h.eval(x), &c, 4, 0.6, &q).unwrap();
        assert!((s.value - 6.0).abs() < 1e-9, "{}", s.value);
        assert!(s.tail.abs() < 1e-12);
        assert!(semi_norm_sq(|x| h.eval(x), &c, 5, 0.6, &q).is_err());
    }
}
