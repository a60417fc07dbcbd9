//! Rational polytopes with interchangeable H- and V-representations.

use super::dd::{extreme_rays, RankDeficient};
use super::matrix::RationalMatrix;
use super::vector::RationalVector;
use super::GeomError;
use crate::rat::{denominator_lcm, Int, Rat};
use num::traits::{Signed, Zero};
use std::cmp::Ordering;

/// The halfspace `{u : <u, normal> >= -offset}` with `normal` in `N_Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfSpace {
    normal: RationalVector,
    offset: Rat,
}

impl HalfSpace {
    pub fn new(normal: RationalVector, offset: Rat) -> Result<Self, GeomError> {
        if normal.is_zero() {
            return Err(GeomError::ZeroNormal);
        }
        Ok(Self { normal, offset })
    }

    pub fn normal(&self) -> &RationalVector {
        &self.normal
    }

    pub fn offset(&self) -> &Rat {
        &self.offset
    }

    pub fn contains(&self, point: &RationalVector) -> bool {
        point.dot(&self.normal) >= -self.offset.clone()
    }

    pub fn is_tight_at(&self, point: &RationalVector) -> bool {
        point.dot(&self.normal) == -self.offset.clone()
    }

    /// Same halfspace with a primitive integer normal.
    pub fn canonical(&self) -> HalfSpace {
        let prim = self
            .normal
            .primitive_vector()
            .expect("halfspace normal is nonzero");
        // <u, n> >= -c scales to <u, s n> >= -s c for the positive s
        // sending n to its primitive form.
        let scale = {
            let idx = (0..self.normal.dim())
                .find(|&i| !self.normal.coord(i).is_zero())
                .expect("nonzero normal");
            prim.coord(idx) / self.normal.coord(idx)
        };
        HalfSpace {
            normal: prim,
            offset: &self.offset * scale,
        }
    }

    fn sort_key_cmp(&self, other: &HalfSpace) -> Ordering {
        self.normal
            .lex_cmp(&other.normal)
            .then_with(|| self.offset.cmp(&other.offset))
    }
}

/// Rational polytope; construct raw, then call [`Polytope::complete_representations`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polytope {
    dim_ambient: usize,
    hrep: Option<Vec<HalfSpace>>,
    vrep: Option<Vec<RationalVector>>,
    dim_affine: Option<usize>,
    /// Rational basis of the direction space of the affine span, rows of a matrix.
    span_basis: Option<Vec<RationalVector>>,
}

impl Polytope {
    pub fn from_halfspaces(dim_ambient: usize, hrep: Vec<HalfSpace>) -> Self {
        Self {
            dim_ambient,
            hrep: Some(hrep),
            vrep: None,
            dim_affine: None,
            span_basis: None,
        }
    }

    pub fn from_points(dim_ambient: usize, points: Vec<RationalVector>) -> Self {
        Self {
            dim_ambient,
            hrep: None,
            vrep: Some(points),
            dim_affine: None,
            span_basis: None,
        }
    }

    pub fn dim_ambient(&self) -> usize {
        self.dim_ambient
    }

    pub fn is_complete(&self) -> bool {
        self.dim_affine.is_some()
    }

    pub fn dim_affine(&self) -> Result<usize, GeomError> {
        self.dim_affine.ok_or(GeomError::IncompleteRepresentation)
    }

    pub fn vertices(&self) -> Result<&[RationalVector], GeomError> {
        match (&self.vrep, self.dim_affine) {
            (Some(v), Some(_)) => Ok(v),
            _ => Err(GeomError::IncompleteRepresentation),
        }
    }

    pub fn halfspaces(&self) -> Result<&[HalfSpace], GeomError> {
        match (&self.hrep, self.dim_affine) {
            (Some(h), Some(_)) => Ok(h),
            _ => Err(GeomError::IncompleteRepresentation),
        }
    }

    /// Rows of a rational basis for the direction space of the affine span.
    pub fn span_basis(&self) -> Result<&[RationalVector], GeomError> {
        self.span_basis
            .as_deref()
            .ok_or(GeomError::IncompleteRepresentation)
    }

    pub fn contains(&self, point: &RationalVector) -> Result<bool, GeomError> {
        let hrep = self
            .hrep
            .as_ref()
            .ok_or(GeomError::IncompleteRepresentation)?;
        Ok(hrep.iter().all(|h| h.contains(point)))
    }

    /// Populates both representations, minimal and mutually consistent.
    ///
    /// Vertices come out sorted lexicographically, halfspaces carry primitive
    /// integer normals and are sorted, so completed polytopes compare stably.
    pub fn complete_representations(self) -> Result<Polytope, GeomError> {
        let dim = self.dim_ambient;
        let points: Vec<RationalVector> = match (&self.vrep, &self.hrep) {
            (Some(points), _) => {
                if points.is_empty() {
                    return Err(GeomError::EmptyPolytope);
                }
                points.clone()
            }
            (None, Some(hrep)) => vertices_from_halfspaces(dim, hrep)?,
            (None, None) => return Err(GeomError::IncompleteRepresentation),
        };
        canonical_from_points(dim, points)
    }

    /// Scales the polytope by a positive rational factor.
    pub fn scaled(&self, t: &Rat) -> Result<Polytope, GeomError> {
        if !t.is_positive() {
            return Err(GeomError::NonPositiveScale);
        }
        let vertices = self.vertices()?;
        let scaled: Vec<RationalVector> = vertices.iter().map(|v| v.scale(t)).collect();
        Polytope::from_points(self.dim_ambient, scaled).complete_representations()
    }
}

/// All vertices of `{u : <u, n_i> >= -c_i}` via the homogenization cone.
fn vertices_from_halfspaces(
    dim: usize,
    hrep: &[HalfSpace],
) -> Result<Vec<RationalVector>, GeomError> {
    if hrep.iter().any(|h| h.normal().dim() != dim) {
        return Err(GeomError::DimensionMismatch);
    }
    if hrep.is_empty() {
        return if dim == 0 {
            Ok(vec![RationalVector::zeros(0)])
        } else {
            Err(GeomError::UnboundedPolytope)
        };
    }
    let normals: Vec<RationalVector> = hrep.iter().map(|h| h.normal().clone()).collect();
    let normal_mat = RationalMatrix::from_rows(&normals);
    let rank = normal_mat.rank();
    if rank < dim {
        // The solution set is invariant under translation along the
        // orthogonal complement of the normals: nonempty means unbounded.
        // Decide feasibility on the projected full-rank system.
        let basis_idx = normal_mat.independent_row_indices();
        let basis: Vec<RationalVector> =
            basis_idx.iter().map(|&i| normals[i].clone()).collect();
        let b = RationalMatrix::from_rows(&basis);
        let gram = b.matmul(&b.transpose());
        let gram_inv = gram.inverse().expect("independent rows give invertible Gram");
        let projected: Vec<HalfSpace> = hrep
            .iter()
            .map(|h| {
                let coeffs = gram_inv.apply(&b.apply(h.normal()));
                HalfSpace::new(coeffs, h.offset().clone())
            })
            .collect::<Result<_, _>>()?;
        return match vertices_from_halfspaces(rank, &projected) {
            Ok(_) => Err(GeomError::UnboundedPolytope),
            Err(GeomError::UnboundedPolytope) => Err(GeomError::UnboundedPolytope),
            Err(e) => Err(e),
        };
    }

    // Homogenize: rows (n_i | c_i) plus (0 | 1), cone in dimension dim + 1.
    let mut rows: Vec<Vec<Int>> = hrep.iter().map(homogeneous_row).collect();
    let mut t_row = vec![Int::zero(); dim + 1];
    t_row[dim] = Int::from(1);
    rows.push(t_row);

    let rays = extreme_rays(&rows, dim + 1).map_err(|RankDeficient| {
        GeomError::Internal("homogenization cone lost rank".to_string())
    })?;
    let mut vertices = Vec::new();
    let mut recession = false;
    for ray in rays {
        let t = Rat::from_integer(ray[dim].clone());
        if t.is_zero() {
            recession = true;
        } else {
            vertices.push(RationalVector::new(
                ray[..dim]
                    .iter()
                    .map(|v| Rat::from_integer(v.clone()) / &t)
                    .collect(),
            ));
        }
    }
    if vertices.is_empty() {
        return Err(GeomError::EmptyPolytope);
    }
    if recession {
        return Err(GeomError::UnboundedPolytope);
    }
    Ok(vertices)
}

/// Integer row `(n | c)` for the halfspace `<u, n> >= -c`.
fn homogeneous_row(h: &HalfSpace) -> Vec<Int> {
    let mut all: Vec<Rat> = h.normal().coords().to_vec();
    all.push(h.offset().clone());
    let l = denominator_lcm(&all);
    all.iter().map(|v| (v * &l).to_integer()).collect()
}

/// Canonical completed polytope from an arbitrary generating point set.
fn canonical_from_points(
    dim: usize,
    mut points: Vec<RationalVector>,
) -> Result<Polytope, GeomError> {
    if points.iter().any(|p| p.dim() != dim) {
        return Err(GeomError::DimensionMismatch);
    }
    points.sort();
    points.dedup();
    if points.is_empty() {
        return Err(GeomError::EmptyPolytope);
    }
    let origin = points[0].clone();
    let diffs: Vec<RationalVector> = points.iter().map(|p| p.sub(&origin)).collect();
    let diff_mat = RationalMatrix::from_rows(&diffs);
    let basis_idx = diff_mat.independent_row_indices();
    let span_basis: Vec<RationalVector> = basis_idx.iter().map(|&i| diffs[i].clone()).collect();
    let k = span_basis.len();

    if k == 0 {
        // A single point: pin every coordinate with an opposing pair.
        let mut hrep = Vec::new();
        for i in 0..dim {
            let e = RationalVector::unit(dim, i);
            hrep.push(HalfSpace::new(e.clone(), -origin.coord(i).clone())?.canonical());
            hrep.push(HalfSpace::new(e.neg(), origin.coord(i).clone())?.canonical());
        }
        hrep.sort_by(HalfSpace::sort_key_cmp);
        return Ok(Polytope {
            dim_ambient: dim,
            hrep: Some(hrep),
            vrep: Some(vec![origin]),
            dim_affine: Some(0),
            span_basis: Some(Vec::new()),
        });
    }

    // Coordinates on the affine span: xi(x) = G^-1 W (x - origin).
    let w = RationalMatrix::from_rows(&span_basis);
    let gram_inv = w
        .matmul(&w.transpose())
        .inverse()
        .expect("span basis rows are independent");
    let coord_map = gram_inv.matmul(&w); // k x dim
    let xi: Vec<RationalVector> = points
        .iter()
        .map(|p| coord_map.apply(&p.sub(&origin)))
        .collect();

    // Facets via the polar dual around the average point.
    let count = Rat::from_integer(Int::from(xi.len() as i64));
    let mut center = RationalVector::zeros(k);
    for x in &xi {
        center = center.add(x);
    }
    center = center.scale(&count.recip());

    let mut polar_rows: Vec<Vec<Int>> = xi
        .iter()
        .map(|x| {
            let shifted = x.sub(&center);
            let mut row: Vec<Rat> = shifted.coords().iter().map(|c| -c).collect();
            row.push(Rat::from_integer(Int::from(1)));
            integerize(&row)
        })
        .collect();
    let mut t_row = vec![Int::zero(); k + 1];
    t_row[k] = Int::from(1);
    polar_rows.push(t_row);
    let polar_rays = extreme_rays(&polar_rows, k + 1)
        .map_err(|RankDeficient| GeomError::Internal("polar cone lost rank".to_string()))?;

    let mut span_facets: Vec<HalfSpace> = Vec::new();
    for ray in &polar_rays {
        let t = Rat::from_integer(ray[k].clone());
        if t.is_zero() {
            return Err(GeomError::Internal("polar dual unbounded".to_string()));
        }
        let y: RationalVector = RationalVector::new(
            ray[..k]
                .iter()
                .map(|v| Rat::from_integer(v.clone()) / &t)
                .collect(),
        );
        if y.is_zero() {
            continue;
        }
        // <xi, y> <= 1 + <center, y> as a lower-bounded halfspace.
        let offset = Rat::from_integer(Int::from(1)) + center.dot(&y);
        span_facets.push(HalfSpace::new(y.neg(), offset)?.canonical());
    }
    span_facets.sort_by(HalfSpace::sort_key_cmp);
    span_facets.dedup();

    // True vertex set from the irredundant facets.
    let span_vertices = vertices_from_halfspaces(k, &span_facets)?;

    // Lift back to ambient coordinates.
    let lift = |x: &RationalVector| -> RationalVector {
        let mut out = origin.clone();
        for (l, b) in span_basis.iter().enumerate() {
            out = out.add(&b.scale(x.coord(l)));
        }
        out
    };
    let mut vertices: Vec<RationalVector> = span_vertices.iter().map(lift).collect();
    vertices.sort();

    let coord_map_t = coord_map.transpose(); // dim x k
    let mut hrep: Vec<HalfSpace> = Vec::new();
    for f in &span_facets {
        let ambient_normal = coord_map_t.apply(f.normal());
        let offset = f.offset() - origin.dot(&ambient_normal);
        hrep.push(HalfSpace::new(ambient_normal, offset)?.canonical());
    }
    if k < dim {
        // Pin the affine span with opposing halfspace pairs.
        for z in w.kernel_basis() {
            let z = z
                .primitive_vector()
                .expect("kernel basis vector is nonzero");
            let z = canonical_sign(z);
            let offset = -origin.dot(&z);
            hrep.push(HalfSpace::new(z.clone(), offset.clone())?.canonical());
            hrep.push(HalfSpace::new(z.neg(), -offset)?.canonical());
        }
    }
    hrep.sort_by(HalfSpace::sort_key_cmp);
    hrep.dedup();

    Ok(Polytope {
        dim_ambient: dim,
        hrep: Some(hrep),
        vrep: Some(vertices),
        dim_affine: Some(k),
        span_basis: Some(span_basis),
    })
}

fn integerize(row: &[Rat]) -> Vec<Int> {
    let l = denominator_lcm(row);
    row.iter().map(|v| (v * &l).to_integer()).collect()
}

fn canonical_sign(v: RationalVector) -> RationalVector {
    match v.coords().iter().find(|c| !c.is_zero()) {
        Some(c) if c.is_negative() => v.neg(),
        _ => v,
    }
}
