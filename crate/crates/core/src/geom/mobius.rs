use num_complex::Complex64;

use crate::error::{GeomError, Result};

/// Nondegeneracy threshold on |ad − bc|.
pub const MIN_DETERMINANT: f64 = 1e-14;
/// Pole threshold on |cz + d|.
pub const POLE_EPS: f64 = 1e-14;

/// A planar Mobius map `z ↦ (az + b)/(cz + d)`, optionally preceded by
/// complex conjugation (sense-reversing maps).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MobiusMap2 {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
    pub conjugate: bool,
}

impl MobiusMap2 {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self> {
        Self::with_conjugation(a, b, c, d, false)
    }

    pub fn with_conjugation(
        a: Complex64,
        b: Complex64,
        c: Complex64,
        d: Complex64,
        conjugate: bool,
    ) -> Result<Self> {
        let det = a * d - b * c;
        if !(det.norm() > MIN_DETERMINANT) {
            return Err(GeomError::DegenerateInput(format!(
                "Mobius determinant {det} is degenerate"
            )));
        }
        Ok(MobiusMap2 {
            a,
            b,
            c,
            d,
            conjugate,
        })
    }

    pub fn identity() -> Self {
        MobiusMap2 {
            a: Complex64::new(1.0, 0.0),
            b: Complex64::new(0.0, 0.0),
            c: Complex64::new(0.0, 0.0),
            d: Complex64::new(1.0, 0.0),
            conjugate: false,
        }
    }

    /// The Cayley-type map `z ↦ i(1 + z)/(1 − z)` of the unit disk onto the
    /// upper half-plane.
    pub fn disk_to_half_plane() -> Self {
        let i = Complex64::new(0.0, 1.0);
        MobiusMap2 {
            a: i,
            b: i,
            c: Complex64::new(-1.0, 0.0),
            d: Complex64::new(1.0, 0.0),
            conjugate: false,
        }
    }

    pub fn determinant(&self) -> Complex64 {
        self.a * self.d - self.b * self.c
    }

    /// Image of `z`; [`GeomError::PoleAtInput`] when `z` maps to infinity.
    pub fn apply(&self, z: Complex64) -> Result<Complex64> {
        let z = if self.conjugate { z.conj() } else { z };
        let den = self.c * z + self.d;
        if den.norm() < POLE_EPS {
            return Err(GeomError::PoleAtInput);
        }
        Ok((self.a * z + self.b) / den)
    }

    /// `self ∘ inner`: first `inner`, then `self`.
    pub fn compose(&self, inner: &MobiusMap2) -> MobiusMap2 {
        // Conjugating after `inner` conjugates inner's coefficients.
        let (a1, b1, c1, d1) = if self.conjugate {
            (inner.a.conj(), inner.b.conj(), inner.c.conj(), inner.d.conj())
        } else {
            (inner.a, inner.b, inner.c, inner.d)
        };
        MobiusMap2 {
            a: self.a * a1 + self.b * c1,
            b: self.a * b1 + self.b * d1,
            c: self.c * a1 + self.d * c1,
            d: self.c * b1 + self.d * d1,
            conjugate: self.conjugate ^ inner.conjugate,
        }
    }

    pub fn inverse(&self) -> MobiusMap2 {
        let (a, b, c, d) = (self.d, -self.b, -self.c, self.a);
        if self.conjugate {
            MobiusMap2 {
                a: a.conj(),
                b: b.conj(),
                c: c.conj(),
                d: d.conj(),
                conjugate: true,
            }
        } else {
            MobiusMap2 {
                a,
                b,
                c,
                d,
                conjugate: false,
            }
        }
    }
}

/// The disk automorphism `z ↦ e^{iθ}(z − z0)/(1 − conj(z0) z)`, sending `z0` to 0.
pub fn disk_automorphism(z0: Complex64, theta: f64) -> Result<MobiusMap2> {
    if !(z0.norm() < 1.0) {
        return Err(GeomError::DomainError(format!(
            "automorphism base point {z0} is not inside the unit disk"
        )));
    }
    let rot = Complex64::from_polar(1.0, theta);
    MobiusMap2::new(rot, -rot * z0, -z0.conj(), Complex64::new(1.0, 0.0))
}

/// `(az + b)/(cz + d)` with prior conjugation when the map reverses orientation.
pub fn mobius_apply(map: &MobiusMap2, z: Complex64) -> Result<Complex64> {
    map.apply(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_fixes_points() {
        let id = MobiusMap2::identity();
        for z in [c(0.0, 0.0), c(1.5, -2.0), c(-0.3, 0.7)] {
            assert_eq!(id.apply(z).unwrap(), z);
        }
        assert_eq!(disk_automorphism(c(0.0, 0.0), 0.0).unwrap().apply(c(0.4, 0.1)).unwrap(), c(0.4, 0.1));
    }

    #[test]
    fn automorphism_sends_base_to_origin() {
        let t = disk_automorphism(c(0.3, 0.0), 0.0).unwrap();
        assert!(t.apply(c(0.3, 0.0)).unwrap().norm() < 1e-14);
        let t = disk_automorphism(c(-0.2, 0.55), 1.1).unwrap();
        assert!(t.apply(c(-0.2, 0.55)).unwrap().norm() < 1e-14);
    }

    #[test]
    fn automorphism_preserves_unit_circle() {
        let t = disk_automorphism(c(0.6, -0.25), 0.7).unwrap();
        for k in 0..16 {
            let phi = 2.0 * PI * k as f64 / 16.0;
            let w = t.apply(Complex64::from_polar(1.0, phi)).unwrap();
            assert!((w.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn automorphism_rejects_outside_base() {
        assert!(matches!(
            disk_automorphism(c(1.0, 0.0), 0.0),
            Err(GeomError::DomainError(_))
        ));
    }

    #[test]
    fn pole_is_reported() {
        let t = MobiusMap2::disk_to_half_plane();
        assert_eq!(t.apply(c(1.0, 0.0)), Err(GeomError::PoleAtInput));
    }

    #[test]
    fn degenerate_map_rejected() {
        assert!(MobiusMap2::new(c(1.0, 0.0), c(2.0, 0.0), c(2.0, 0.0), c(4.0, 0.0)).is_err());
    }

    #[test]
    fn composition_matches_sequential_application() {
        let t1 = disk_automorphism(c(0.2, 0.3), 0.4).unwrap();
        let t2 = MobiusMap2::with_conjugation(c(1.0, 1.0), c(0.5, 0.0), c(0.1, -0.2), c(2.0, 0.0), true)
            .unwrap();
        let t3 = MobiusMap2::disk_to_half_plane();
        for z in [c(0.1, 0.2), c(-0.5, 0.4), c(0.0, -0.9)] {
            let seq = t3.apply(t2.apply(t1.apply(z).unwrap()).unwrap()).unwrap();
            let comp = t3.compose(&t2.compose(&t1)).apply(z).unwrap();
            assert!((seq - comp).norm() < 1e-12 * seq.norm().max(1.0));
        }
    }

    #[test]
    fn inverse_round_trips() {
        for t in [
            disk_automorphism(c(0.2, -0.7), 2.0).unwrap(),
            MobiusMap2::with_conjugation(c(1.0, 1.0), c(0.5, 0.0), c(0.1, -0.2), c(2.0, 0.0), true)
                .unwrap(),
        ] {
            let z = c(0.33, 0.12);
            let back = t.inverse().apply(t.apply(z).unwrap()).unwrap();
            assert!((back - z).norm() < 1e-13);
        }
    }

    #[test]
    fn cayley_maps_disk_into_upper_half_plane() {
        let t = MobiusMap2::disk_to_half_plane();
        for z in [c(0.0, 0.0), c(0.5, 0.5), c(-0.9, 0.1), c(0.1, -0.95)] {
            assert!(t.apply(z).unwrap().im > 0.0);
        }
    }
}
