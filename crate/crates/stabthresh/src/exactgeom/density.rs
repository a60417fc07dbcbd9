//! Exact integration of products of linear forms over polytopes.
//!
//! Each simplex is mapped affinely onto the standard simplex, the integrand
//! is expanded into monomials, and the closed-form monomial integral
//! `int t^a dt = prod(a_i!) / (k + sum a_i)!` finishes the job.

use super::simplex::{factorial, LatticeFrame, Simplex};
use super::polytope::Polytope;
use super::vector::RationalVector;
use super::GeomError;
use crate::rat::Rat;
use num::traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// One linear factor `(<lambda, form> + shift) / normalizer` of a density.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearFactor {
    pub form: RationalVector,
    pub shift: Rat,
    pub normalizer: Rat,
}

impl LinearFactor {
    pub fn new(form: RationalVector, shift: Rat, normalizer: Rat) -> Result<Self, GeomError> {
        if !normalizer.is_positive() {
            return Err(GeomError::NonPositiveScale);
        }
        Ok(Self {
            form,
            shift,
            normalizer,
        })
    }

    /// Homogeneous factor `<lambda, form>` with normalizer 1.
    pub fn linear(form: RationalVector) -> Self {
        Self {
            form,
            shift: Rat::zero(),
            normalizer: Rat::one(),
        }
    }

    fn value_unnormalized(&self, point: &RationalVector) -> Rat {
        point.dot(&self.form) + &self.shift
    }
}

/// Product of linear factors; the empty product is the constant density 1.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PolynomialDensity {
    factors: Vec<LinearFactor>,
}

impl PolynomialDensity {
    pub fn uniform() -> Self {
        Self::default()
    }

    pub fn new(factors: Vec<LinearFactor>) -> Self {
        Self { factors }
    }

    pub fn factors(&self) -> &[LinearFactor] {
        &self.factors
    }

    pub fn push(&mut self, factor: LinearFactor) {
        self.factors.push(factor);
    }

    pub fn value(&self, point: &RationalVector) -> Rat {
        let mut out = Rat::one();
        for f in &self.factors {
            out *= f.value_unnormalized(point) / &f.normalizer;
        }
        out
    }

    /// True when every factor is nonnegative at every given point.
    pub fn nonnegative_at(&self, points: &[RationalVector]) -> bool {
        self.factors
            .iter()
            .all(|f| points.iter().all(|p| !f.value_unnormalized(p).is_negative()))
    }

    fn normalizer_product(&self) -> Rat {
        let mut out = Rat::one();
        for f in &self.factors {
            out *= &f.normalizer;
        }
        out
    }
}

/// Integral of the product of the unnormalized factors over one simplex,
/// in the lattice measure carried by `frame`.
fn integrate_over_simplex(
    simplex: &Simplex,
    frame: &LatticeFrame,
    factors: &[LinearFactor],
) -> Rat {
    let k = simplex.dim();
    let verts = simplex.vertices();
    if k == 0 {
        let mut out = Rat::one();
        for f in factors {
            out *= f.value_unnormalized(&verts[0]);
        }
        return out;
    }
    let xi: Vec<RationalVector> = verts.iter().map(|v| frame.coordinates(v)).collect();
    let rows: Vec<RationalVector> = xi[1..].iter().map(|v| v.sub(&xi[0])).collect();
    let jac = super::matrix::RationalMatrix::from_rows(&rows).det().abs();
    if jac.is_zero() {
        return Rat::zero();
    }

    // Expand prod_j (b0_j + sum_i b_i_j t_i) into monomials of t.
    let mut poly: BTreeMap<Vec<u32>, Rat> = BTreeMap::new();
    poly.insert(vec![0; k], Rat::one());
    for f in factors {
        let b0 = f.value_unnormalized(&verts[0]);
        let bs: Vec<Rat> = verts[1..]
            .iter()
            .map(|v| v.sub(&verts[0]).dot(&f.form))
            .collect();
        let mut next: BTreeMap<Vec<u32>, Rat> = BTreeMap::new();
        for (expo, coeff) in &poly {
            if !b0.is_zero() {
                let entry = next.entry(expo.clone()).or_insert_with(Rat::zero);
                *entry += coeff * &b0;
            }
            for (i, b) in bs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let mut e = expo.clone();
                e[i] += 1;
                let entry = next.entry(e).or_insert_with(Rat::zero);
                *entry += coeff * b;
            }
        }
        poly = next;
    }

    let mut total = Rat::zero();
    for (expo, coeff) in &poly {
        if coeff.is_zero() {
            continue;
        }
        let degree: u32 = expo.iter().sum();
        let mut numer = Rat::one();
        for &a in expo {
            numer *= Rat::from_integer(factorial(a as usize));
        }
        let denom = Rat::from_integer(factorial(k + degree as usize));
        total += coeff * numer / denom;
    }
    total * jac
}

impl Polytope {
    /// Exact integral of the density over a full-dimensional polytope.
    ///
    /// Lower-dimensional domains are rejected; call
    /// [`Polytope::integrate_density_affine`] to opt into integration over
    /// the affine span.
    pub fn integrate_density(&self, density: &PolynomialDensity) -> Result<Rat, GeomError> {
        if self.dim_affine()? < self.dim_ambient() {
            return Err(GeomError::DegenerateDomain);
        }
        self.integrate_density_affine(density)
    }

    /// Exact integral over the affine span, with the Lebesgue measure
    /// normalized so a lattice-unit simplex has volume `1/dim!`.
    pub fn integrate_density_affine(
        &self,
        density: &PolynomialDensity,
    ) -> Result<Rat, GeomError> {
        let frame = LatticeFrame::for_polytope(self)?;
        let mut total = Rat::zero();
        for s in self.triangulate()? {
            total += integrate_over_simplex(&s, &frame, density.factors());
        }
        Ok(total / density.normalizer_product())
    }

    /// Density-weighted barycenter, exact.
    pub fn barycenter(&self, density: &PolynomialDensity) -> Result<RationalVector, GeomError> {
        let frame = LatticeFrame::for_polytope(self)?;
        let simplices = self.triangulate()?;
        let mut mass = Rat::zero();
        for s in &simplices {
            mass += integrate_over_simplex(s, &frame, density.factors());
        }
        if mass.is_zero() {
            return Err(GeomError::ZeroMass);
        }
        let dim = self.dim_ambient();
        let mut coords = Vec::with_capacity(dim);
        for j in 0..dim {
            let mut factors = density.factors().to_vec();
            factors.push(LinearFactor::linear(RationalVector::unit(dim, j)));
            let mut moment = Rat::zero();
            for s in &simplices {
                moment += integrate_over_simplex(s, &frame, &factors);
            }
            coords.push(moment / &mass);
        }
        Ok(RationalVector::new(coords))
    }
}
