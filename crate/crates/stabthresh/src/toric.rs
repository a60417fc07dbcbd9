//! Toric Fano pipeline: fan rays and divisor coefficients to the stability
//! threshold.
//!
//! A datum is a list of primitive ray generators `u_i` with divisor
//! coefficients `c_i`. The divisor polytope `P = {u : <u, u_i> >= -c_i}`
//! has a barycenter `ubar`, the translated divisor has coefficients
//! `a_i = c_i + <ubar, u_i>`, and the threshold is `min_i 1/a_i`. Finite
//! level approximants replace the barycenter by the average of the lattice
//! points of `m P`.

use crate::exactgeom::{
    GeomError, HalfSpace, Polytope, PolynomialDensity, RationalMatrix, RationalVector,
};
use crate::rat::{Int, Rat};
use crate::threshold::{Threshold, Verdict};
use num::traits::{One, Signed};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ToricError {
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error("ray {index} is not a primitive integer vector")]
    NotPrimitive { index: usize },
    #[error("rays {first} and {second} coincide")]
    DuplicateRay { first: usize, second: usize },
    #[error("divisor polytope is not full-dimensional")]
    NotFullDimensional,
    #[error("datum is malformed: {0}")]
    BadDatum(String),
    #[error("fan data is invalid: {0}")]
    BadFan(String),
    #[error("operation requires the anticanonical polarization (all c_i = 1)")]
    NotAnticanonical,
    #[error("operation requires the maximal cones of the fan")]
    MissingFan,
    #[error("vector lies in no maximal cone of the fan")]
    OutsideSupport,
    #[error("m P contains no lattice points")]
    NoSections,
    #[error("valuation vector must be nonzero")]
    ZeroValuation,
}

/// A divisor supported on the torus-invariant prime divisors, one
/// coefficient per ray.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorOnPrimes {
    coeffs: Vec<Rat>,
}

impl DivisorOnPrimes {
    pub fn new(coeffs: Vec<Rat>) -> Self {
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }
}

/// A torus-invariant valuation, identified with a nonzero vector of `N_Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricValuation {
    vector: RationalVector,
}

impl ToricValuation {
    pub fn new(vector: RationalVector) -> Result<Self, ToricError> {
        if vector.is_zero() {
            return Err(ToricError::ZeroValuation);
        }
        Ok(Self { vector })
    }

    pub fn vector(&self) -> &RationalVector {
        &self.vector
    }
}

/// A polarized toric Fano datum: primitive rays, divisor coefficients, and
/// optionally the maximal cones of the fan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricFanoDatum {
    dim: usize,
    rays: Vec<RationalVector>,
    coeffs: Vec<Rat>,
    cones: Option<Vec<Vec<usize>>>,
    polytope: Polytope,
}

impl ToricFanoDatum {
    /// Validates and completes a datum. The rays must be distinct primitive
    /// integer vectors and the divisor polytope must be bounded, nonempty
    /// and full-dimensional. Cones, when given, must describe a complete
    /// simplicial fan on the rays.
    pub fn new(
        dim: usize,
        rays: Vec<RationalVector>,
        coeffs: Vec<Rat>,
        cones: Option<Vec<Vec<usize>>>,
    ) -> Result<Self, ToricError> {
        if dim == 0 {
            return Err(ToricError::BadDatum("dimension must be positive".into()));
        }
        if rays.is_empty() {
            return Err(ToricError::BadDatum("no rays given".into()));
        }
        if rays.len() != coeffs.len() {
            return Err(ToricError::BadDatum(format!(
                "{} rays but {} coefficients",
                rays.len(),
                coeffs.len()
            )));
        }
        for (i, ray) in rays.iter().enumerate() {
            if ray.dim() != dim {
                return Err(ToricError::BadDatum(format!("ray {i} has wrong dimension")));
            }
            if !ray.is_integral() || ray.is_zero() {
                return Err(ToricError::NotPrimitive { index: i });
            }
            let ints: Vec<Int> = ray.coords().iter().map(|c| c.to_integer()).collect();
            if crate::rat::gcd_all(&ints) != Int::one() {
                return Err(ToricError::NotPrimitive { index: i });
            }
        }
        for i in 0..rays.len() {
            for j in i + 1..rays.len() {
                if rays[i] == rays[j] {
                    return Err(ToricError::DuplicateRay { first: i, second: j });
                }
            }
        }
        let hrep: Vec<HalfSpace> = rays
            .iter()
            .zip(&coeffs)
            .map(|(ray, c)| HalfSpace::new(ray.clone(), c.clone()))
            .collect::<Result<_, _>>()?;
        let polytope = Polytope::from_halfspaces(dim, hrep).complete_representations()?;
        if polytope.dim_affine()? != dim {
            return Err(ToricError::NotFullDimensional);
        }
        if let Some(cones) = &cones {
            validate_fan(dim, &rays, cones)?;
        }
        Ok(Self {
            dim,
            rays,
            coeffs,
            cones,
            polytope,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[RationalVector] {
        &self.rays
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn cones(&self) -> Option<&[Vec<usize>]> {
        self.cones.as_deref()
    }

    /// True when the datum encodes the anticanonical polarization.
    pub fn is_anticanonical(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_one())
    }

    /// The chosen divisor as a [`DivisorOnPrimes`].
    pub fn reference_divisor(&self) -> DivisorOnPrimes {
        DivisorOnPrimes::new(self.coeffs.clone())
    }

    /// The divisor polytope `P = {u : <u, u_i> >= -c_i}`, completed.
    pub fn anticanonical_polytope(&self) -> Polytope {
        self.polytope.clone()
    }

    /// Barycenter of the divisor polytope and the divisor it singles out.
    pub fn barycenter_divisor(&self) -> Result<(RationalVector, DivisorOnPrimes), ToricError> {
        let ubar = self.polytope.barycenter(&PolynomialDensity::uniform())?;
        let divisor = self.divisor_at(&ubar);
        debug_assert!(divisor.coeffs().iter().all(Rat::is_positive));
        Ok((ubar, divisor))
    }

    /// Divisor coefficients of the translate of the reference divisor by `u`.
    pub fn divisor_at(&self, u: &RationalVector) -> DivisorOnPrimes {
        DivisorOnPrimes::new(
            self.rays
                .iter()
                .zip(&self.coeffs)
                .map(|(ray, c)| c + u.dot(ray))
                .collect(),
        )
    }

    /// The stability threshold `min_i 1/a_i` and the index of the
    /// minimizing ray (smallest index on ties).
    pub fn delta(&self) -> Result<(Rat, usize), ToricError> {
        let (_, divisor) = self.barycenter_divisor()?;
        let mut best: Option<(Rat, usize)> = None;
        for (i, a) in divisor.coeffs().iter().enumerate() {
            let ratio = a.recip();
            match &best {
                Some((current, _)) if *current <= ratio => {}
                _ => best = Some((ratio, i)),
            }
        }
        Ok(best.expect("datum has at least one ray"))
    }

    /// Level-`m` basis-type divisor and threshold from the lattice points
    /// of `m P`.
    pub fn finite_m_divisor(&self, m: u64) -> Result<(DivisorOnPrimes, Threshold), ToricError> {
        let ubar_m = self.finite_m_barycenter(m)?;
        let divisor = self.divisor_at(&ubar_m);
        let mut best: Option<Rat> = None;
        for a in divisor.coeffs() {
            if a.is_positive() {
                let ratio = a.recip();
                if best.as_ref().is_none_or(|b| ratio < *b) {
                    best = Some(ratio);
                }
            }
        }
        let delta_m = match best {
            Some(r) => Threshold::Finite(r),
            None => Threshold::Infinite,
        };
        Ok((divisor, delta_m))
    }

    /// Average of `(1/m)(m P ∩ M)`.
    pub fn finite_m_barycenter(&self, m: u64) -> Result<RationalVector, ToricError> {
        let points = self
            .polytope
            .lattice_points(m, &RationalVector::zeros(self.dim))?;
        if points.is_empty() {
            return Err(ToricError::NoSections);
        }
        let mut sum = RationalVector::zeros(self.dim);
        for p in &points {
            sum = sum.add(p);
        }
        let scale =
            Rat::from_integer(Int::from(m)) * Rat::from_integer(Int::from(points.len() as u64));
        Ok(sum.scale(&scale.recip()))
    }

    /// K-semistability verdict for an anticanonical datum: semistable iff
    /// the barycenter sits at the origin.
    pub fn k_semistable_verdict(&self) -> Result<Verdict, ToricError> {
        if !self.is_anticanonical() {
            return Err(ToricError::NotAnticanonical);
        }
        let (ubar, _) = self.barycenter_divisor()?;
        Ok(if ubar.is_zero() {
            Verdict::KSemistable
        } else {
            Verdict::KUnstable
        })
    }

    /// Log discrepancy of a toric valuation: the piecewise-linear extension
    /// over the fan of the function taking value 1 on every primitive ray.
    pub fn log_discrepancy(&self, v: &ToricValuation) -> Result<Rat, ToricError> {
        let (_, weights) = self.locate_in_fan(v.vector())?;
        Ok(weights.iter().sum())
    }

    /// Value of a toric valuation on a divisor supported on the prime
    /// divisors, by linearity on the containing cone.
    pub fn valuation_on_divisor(
        &self,
        v: &ToricValuation,
        divisor: &DivisorOnPrimes,
    ) -> Result<Rat, ToricError> {
        if divisor.coeffs().len() != self.rays.len() {
            return Err(ToricError::BadDatum(
                "divisor length does not match ray count".into(),
            ));
        }
        let (cone, weights) = self.locate_in_fan(v.vector())?;
        Ok(cone
            .iter()
            .zip(&weights)
            .map(|(&ray_idx, w)| w * &divisor.coeffs()[ray_idx])
            .sum())
    }

    /// First maximal cone containing the vector, with its barycentric
    /// weights on that cone's rays.
    fn locate_in_fan(&self, vector: &RationalVector) -> Result<(&[usize], Vec<Rat>), ToricError> {
        let cones = self.cones.as_ref().ok_or(ToricError::MissingFan)?;
        if vector.dim() != self.dim {
            return Err(ToricError::BadDatum("valuation has wrong dimension".into()));
        }
        for cone in cones {
            let columns: Vec<RationalVector> = cone.iter().map(|&i| self.rays[i].clone()).collect();
            let mat = RationalMatrix::from_columns(&columns);
            if let Some(weights) = mat.solve(vector) {
                if weights.coords().iter().all(|w| !w.is_negative()) {
                    return Ok((cone, weights.coords().to_vec()));
                }
            }
        }
        Err(ToricError::OutsideSupport)
    }
}

/// Checks that the cones describe a complete simplicial fan on the rays:
/// every maximal cone is spanned by `dim` independent rays, every ray is
/// used, and every wall separates exactly two cones lying on opposite
/// sides.
fn validate_fan(
    dim: usize,
    rays: &[RationalVector],
    cones: &[Vec<usize>],
) -> Result<(), ToricError> {
    if cones.is_empty() {
        return Err(ToricError::BadFan("no maximal cones".into()));
    }
    for (ci, cone) in cones.iter().enumerate() {
        if cone.len() != dim {
            return Err(ToricError::BadFan(format!(
                "cone {ci} has {} rays, expected {dim}",
                cone.len()
            )));
        }
        let mut sorted = cone.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != dim {
            return Err(ToricError::BadFan(format!("cone {ci} repeats a ray")));
        }
        if cone.iter().any(|&i| i >= rays.len()) {
            return Err(ToricError::BadFan(format!(
                "cone {ci} references a missing ray"
            )));
        }
        let spanned: Vec<RationalVector> = cone.iter().map(|&i| rays[i].clone()).collect();
        if RationalMatrix::from_rows(&spanned).rank() != dim {
            return Err(ToricError::BadFan(format!("cone {ci} is not simplicial")));
        }
    }
    let used: std::collections::BTreeSet<usize> = cones.iter().flatten().copied().collect();
    if used.len() != rays.len() {
        return Err(ToricError::BadFan("some ray appears in no cone".into()));
    }

    if dim == 1 {
        // Completeness in rank one means both directions are present.
        let has_positive = cones.iter().any(|c| rays[c[0]].coord(0).is_positive());
        let has_negative = cones.iter().any(|c| rays[c[0]].coord(0).is_negative());
        if !(has_positive && has_negative) {
            return Err(ToricError::BadFan("rank-one fan misses a direction".into()));
        }
        return Ok(());
    }

    // Wall check: each (dim - 1)-subset of a cone must appear in exactly
    // two cones, whose remaining rays sit strictly on opposite sides.
    let mut walls: std::collections::BTreeMap<Vec<usize>, Vec<usize>> = Default::default();
    for (ci, cone) in cones.iter().enumerate() {
        for skip in 0..dim {
            let mut wall: Vec<usize> = cone
                .iter()
                .enumerate()
                .filter_map(|(k, &r)| (k != skip).then_some(r))
                .collect();
            wall.sort_unstable();
            walls.entry(wall).or_default().push(ci);
        }
    }
    for (wall, incident) in &walls {
        if incident.len() != 2 {
            return Err(ToricError::BadFan(format!(
                "wall {wall:?} lies in {} cones, expected 2",
                incident.len()
            )));
        }
        let wall_rays: Vec<RationalVector> = wall.iter().map(|&i| rays[i].clone()).collect();
        let kernel = RationalMatrix::from_rows(&wall_rays).kernel_basis();
        let normal = kernel
            .first()
            .ok_or_else(|| ToricError::BadFan("wall has no normal".into()))?;
        let mut signs = Vec::new();
        for &ci in incident {
            let extra = cones[ci]
                .iter()
                .find(|r| !wall.contains(r))
                .expect("cone has a ray outside its wall");
            signs.push(rays[*extra].dot(normal));
        }
        if !(signs[0].clone() * signs[1].clone()).is_negative() {
            return Err(ToricError::BadFan(format!(
                "cones across wall {wall:?} do not lie on opposite sides"
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    pub(crate) fn p2() -> ToricFanoDatum {
        ToricFanoDatum::new(
            2,
            vec![
                RationalVector::from_ints(&[1, 0]),
                RationalVector::from_ints(&[0, 1]),
                RationalVector::from_ints(&[-1, -1]),
            ],
            vec![rat_int(1); 3],
            Some(vec![vec![0, 1], vec![1, 2], vec![2, 0]]),
        )
        .unwrap()
    }

    pub(crate) fn bl1_p2() -> ToricFanoDatum {
        ToricFanoDatum::new(
            2,
            vec![
                RationalVector::from_ints(&[1, 0]),
                RationalVector::from_ints(&[0, 1]),
                RationalVector::from_ints(&[-1, -1]),
                RationalVector::from_ints(&[1, 1]),
            ],
            vec![rat_int(1); 4],
            Some(vec![vec![0, 3], vec![3, 1], vec![1, 2], vec![2, 0]]),
        )
        .unwrap()
    }

    pub(crate) fn p1_x_p1(coeffs: Vec<Rat>) -> ToricFanoDatum {
        ToricFanoDatum::new(
            2,
            vec![
                RationalVector::from_ints(&[1, 0]),
                RationalVector::from_ints(&[-1, 0]),
                RationalVector::from_ints(&[0, 1]),
                RationalVector::from_ints(&[0, -1]),
            ],
            coeffs,
            Some(vec![vec![0, 2], vec![2, 1], vec![1, 3], vec![3, 0]]),
        )
        .unwrap()
    }

    #[test]
    fn anticanonical_polytopes_are_the_classical_ones() {
        let p = p2().anticanonical_polytope();
        assert_eq!(
            p.vertices().unwrap(),
            &[
                RationalVector::from_ints(&[-1, -1]),
                RationalVector::from_ints(&[-1, 2]),
                RationalVector::from_ints(&[2, -1]),
            ]
        );
        let square = p1_x_p1(vec![rat_int(1); 4]).anticanonical_polytope();
        assert_eq!(square.vertices().unwrap().len(), 4);
        let trapezoid = bl1_p2().anticanonical_polytope();
        assert_eq!(
            trapezoid.vertices().unwrap(),
            &[
                RationalVector::from_ints(&[-1, 0]),
                RationalVector::from_ints(&[-1, 2]),
                RationalVector::from_ints(&[0, -1]),
                RationalVector::from_ints(&[2, -1]),
            ]
        );
    }

    #[test]
    fn barycenter_divisors() {
        let (ubar, d) = p2().barycenter_divisor().unwrap();
        assert!(ubar.is_zero());
        assert_eq!(d.coeffs(), &[rat_int(1), rat_int(1), rat_int(1)]);

        let (ubar, d) = bl1_p2().barycenter_divisor().unwrap();
        assert_eq!(ubar, RationalVector::new(vec![rat(1, 12), rat(1, 12)]));
        assert_eq!(d.coeffs(), &[rat(13, 12), rat(13, 12), rat(5, 6), rat(7, 6)]);

        let (ubar, d) = p1_x_p1(vec![rat_int(1); 4]).barycenter_divisor().unwrap();
        assert!(ubar.is_zero());
        assert_eq!(d.coeffs(), vec![rat_int(1); 4].as_slice());
    }

    #[test]
    fn delta_values() {
        assert_eq!(p2().delta().unwrap(), (rat_int(1), 0));
        // min(12/13, 12/13, 6/5, 6/7) is attained at the exceptional ray.
        let (delta, argmin) = bl1_p2().delta().unwrap();
        assert_eq!(delta, rat(6, 7));
        assert_eq!(argmin, 3);
        let (delta, argmin) = p1_x_p1(vec![rat_int(1), rat_int(1), rat_int(2), rat_int(2)])
            .delta()
            .unwrap();
        assert_eq!(delta, rat(1, 2));
        assert_eq!(argmin, 2);
    }

    #[test]
    fn finite_level_divisors() {
        let (d1, delta1) = p2().finite_m_divisor(1).unwrap();
        assert_eq!(d1.coeffs(), vec![rat_int(1); 3].as_slice());
        assert_eq!(delta1, Threshold::Finite(rat_int(1)));

        // Brute-force oracle for the level-1 points of the blowup trapezoid.
        let mut points = Vec::new();
        for x in -1i64..=2 {
            for y in -1i64..=2 {
                if x + y <= 1 && x + y >= -1 {
                    points.push((x, y));
                }
            }
        }
        assert_eq!(points.len(), 9);
        let sx: i64 = points.iter().map(|p| p.0).sum();
        let sy: i64 = points.iter().map(|p| p.1).sum();
        let expected = RationalVector::new(vec![rat(sx, 9), rat(sy, 9)]);
        assert_eq!(expected, RationalVector::new(vec![rat(1, 9), rat(1, 9)]));
        assert_eq!(bl1_p2().finite_m_barycenter(1).unwrap(), expected);
    }

    #[test]
    fn verdicts() {
        assert_eq!(p2().k_semistable_verdict().unwrap(), Verdict::KSemistable);
        assert_eq!(bl1_p2().k_semistable_verdict().unwrap(), Verdict::KUnstable);
        assert_eq!(
            p1_x_p1(vec![rat_int(1); 4]).k_semistable_verdict().unwrap(),
            Verdict::KSemistable
        );
        assert_eq!(
            p1_x_p1(vec![rat_int(1), rat_int(1), rat_int(2), rat_int(2)])
                .k_semistable_verdict()
                .unwrap_err(),
            ToricError::NotAnticanonical
        );
    }

    #[test]
    fn log_discrepancies() {
        let datum = p2();
        for ray in datum.rays() {
            let v = ToricValuation::new(ray.clone()).unwrap();
            assert_eq!(datum.log_discrepancy(&v).unwrap(), rat_int(1));
            let doubled = ToricValuation::new(ray.scale(&rat_int(2))).unwrap();
            assert_eq!(datum.log_discrepancy(&doubled).unwrap(), rat_int(2));
        }
        let diag = ToricValuation::new(RationalVector::from_ints(&[1, 1])).unwrap();
        assert_eq!(datum.log_discrepancy(&diag).unwrap(), rat_int(2));
        assert_eq!(
            datum
                .valuation_on_divisor(&diag, &DivisorOnPrimes::new(vec![rat_int(1); 3]))
                .unwrap(),
            rat_int(2)
        );
    }

    #[test]
    fn fan_is_required_for_valuation_evaluation() {
        let no_fan =
            ToricFanoDatum::new(2, p2().rays().to_vec(), vec![rat_int(1); 3], None).unwrap();
        let v = ToricValuation::new(RationalVector::from_ints(&[1, 0])).unwrap();
        assert_eq!(
            no_fan.log_discrepancy(&v).unwrap_err(),
            ToricError::MissingFan
        );
    }

    #[test]
    fn datum_validation_rejects_bad_input() {
        // Non-primitive ray.
        let err = ToricFanoDatum::new(
            2,
            vec![
                RationalVector::from_ints(&[2, 0]),
                RationalVector::from_ints(&[0, 1]),
                RationalVector::from_ints(&[-1, -1]),
            ],
            vec![rat_int(1); 3],
            None,
        )
        .unwrap_err();
        assert_eq!(err, ToricError::NotPrimitive { index: 0 });

        // Unbounded polytope: rays do not span positively.
        let err = ToricFanoDatum::new(
            2,
            vec![
                RationalVector::from_ints(&[1, 0]),
                RationalVector::from_ints(&[0, 1]),
            ],
            vec![rat_int(1); 2],
            None,
        )
        .unwrap_err();
        assert_eq!(err, ToricError::Geom(GeomError::UnboundedPolytope));

        // Incomplete fan: a wall in only one cone.
        let err = ToricFanoDatum::new(
            2,
            p2().rays().to_vec(),
            vec![rat_int(1); 3],
            Some(vec![vec![0, 1], vec![1, 2]]),
        )
        .unwrap_err();
        assert!(matches!(err, ToricError::BadFan(_)));
    }

    #[test]
    fn ray_minimum_agrees_with_cone_sweep() {
        for datum in [p2(), bl1_p2(), p1_x_p1(vec![rat_int(1); 4])] {
            let (delta, _) = datum.delta().unwrap();
            let (_, divisor) = datum.barycenter_divisor().unwrap();
            let mut best: Option<Rat> = None;
            for cone in datum.cones().unwrap() {
                for &i in cone {
                    let v = ToricValuation::new(datum.rays()[i].clone()).unwrap();
                    let a = datum.log_discrepancy(&v).unwrap();
                    let value = datum.valuation_on_divisor(&v, &divisor).unwrap();
                    let ratio = a / value;
                    if best.as_ref().is_none_or(|b| ratio < *b) {
                        best = Some(ratio);
                    }
                }
            }
            assert_eq!(best.unwrap(), delta);
        }
    }
}
