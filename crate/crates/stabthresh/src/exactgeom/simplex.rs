//! Deterministic fan triangulation and lattice-normalized volumes.

use super::matrix::{integer_kernel, RationalMatrix};
use super::polytope::Polytope;
use super::vector::RationalVector;
use super::GeomError;
use crate::rat::{denominator_lcm, Int, Rat};
use num::traits::{One, Signed, Zero};

/// A full-dimensional simplex inside the affine span of its parent polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Simplex {
    vertices: Vec<RationalVector>,
}

impl Simplex {
    /// Builds a simplex, checking affine independence of the vertices.
    pub fn new(vertices: Vec<RationalVector>) -> Result<Self, GeomError> {
        if vertices.is_empty() {
            return Err(GeomError::EmptyPolytope);
        }
        let diffs: Vec<RationalVector> = vertices[1..]
            .iter()
            .map(|v| v.sub(&vertices[0]))
            .collect();
        if RationalMatrix::from_rows(&diffs).rank() != diffs.len() {
            return Err(GeomError::Internal(
                "simplex vertices are affinely dependent".to_string(),
            ));
        }
        Ok(Self { vertices })
    }

    pub fn vertices(&self) -> &[RationalVector] {
        &self.vertices
    }

    /// Affine dimension (`#vertices - 1`).
    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    /// Volume in the given frame, normalized so a lattice-unit simplex of
    /// dimension `k` has volume `1/k!`.
    pub fn volume(&self, frame: &LatticeFrame) -> Rat {
        let k = self.dim();
        if k == 0 {
            return Rat::one();
        }
        let xi: Vec<RationalVector> = self
            .vertices
            .iter()
            .map(|v| frame.coordinates(v))
            .collect();
        let rows: Vec<RationalVector> = xi[1..].iter().map(|v| v.sub(&xi[0])).collect();
        let det = RationalMatrix::from_rows(&rows).det();
        det.abs() / Rat::from_integer(factorial(k))
    }
}

pub(crate) fn factorial(n: usize) -> Int {
    let mut out = Int::one();
    for i in 2..=n {
        out *= Int::from(i as u64);
    }
    out
}

/// Lattice-adapted coordinates on the affine span of a polytope.
///
/// The basis generates the full direction lattice `span ∩ Z^n`, so volumes
/// measured in these coordinates agree with the lattice normalization.
#[derive(Clone, Debug)]
pub struct LatticeFrame {
    origin: RationalVector,
    /// Rows form a basis of the direction lattice; empty for a point.
    basis: Vec<RationalVector>,
    coord_map: RationalMatrix,
}

impl LatticeFrame {
    pub fn for_polytope(p: &Polytope) -> Result<LatticeFrame, GeomError> {
        let vertices = p.vertices()?;
        let k = p.dim_affine()?;
        let dim = p.dim_ambient();
        let origin = vertices[0].clone();
        if k == 0 {
            return Ok(LatticeFrame {
                origin,
                basis: Vec::new(),
                coord_map: RationalMatrix::zeros(0, dim),
            });
        }
        let basis: Vec<RationalVector> = if k == dim {
            (0..dim).map(|i| RationalVector::unit(dim, i)).collect()
        } else {
            // Saturated lattice basis of span ∩ Z^n: integer kernel of the
            // orthogonal complement of the span directions.
            let w = RationalMatrix::from_rows(p.span_basis()?);
            let complement: Vec<Vec<Int>> = w
                .kernel_basis()
                .iter()
                .map(|z| {
                    let l = denominator_lcm(z.coords());
                    z.coords().iter().map(|c| (c * &l).to_integer()).collect()
                })
                .collect();
            integer_kernel(&complement, dim)
                .into_iter()
                .map(|col| {
                    RationalVector::new(col.into_iter().map(Rat::from_integer).collect())
                })
                .collect()
        };
        if basis.len() != k {
            return Err(GeomError::Internal(
                "lattice basis has wrong rank".to_string(),
            ));
        }
        let b = RationalMatrix::from_rows(&basis);
        let gram_inv = b
            .matmul(&b.transpose())
            .inverse()
            .ok_or_else(|| GeomError::Internal("degenerate lattice Gram".to_string()))?;
        let coord_map = gram_inv.matmul(&b);
        Ok(LatticeFrame {
            origin,
            basis,
            coord_map,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Frame coordinates of a point of the affine span.
    pub fn coordinates(&self, point: &RationalVector) -> RationalVector {
        self.coord_map.apply(&point.sub(&self.origin))
    }
}

impl Polytope {
    /// Deterministic fan triangulation from the lexicographically first vertex.
    ///
    /// The simplices partition the polytope up to measure zero and their
    /// volumes sum to the polytope volume exactly.
    pub fn triangulate(&self) -> Result<Vec<Simplex>, GeomError> {
        let vertices = self.vertices()?;
        let k = self.dim_affine()?;
        if k == 0 {
            return Ok(vec![Simplex::new(vec![vertices[0].clone()])?]);
        }
        if k == 1 {
            return Ok(vec![Simplex::new(vec![
                vertices[0].clone(),
                vertices[vertices.len() - 1].clone(),
            ])?]);
        }
        if vertices.len() == k + 1 {
            return Ok(vec![Simplex::new(vertices.to_vec())?]);
        }
        let apex = vertices[0].clone();
        let mut out = Vec::new();
        for h in self.halfspaces()? {
            let tight: Vec<RationalVector> = vertices
                .iter()
                .filter(|v| h.is_tight_at(v))
                .cloned()
                .collect();
            // Skip non-facet halfspaces (affine-span pins) and facets
            // through the apex; the remaining facets see the apex coned in.
            if tight.len() == vertices.len() || tight.contains(&apex) {
                continue;
            }
            let facet = Polytope::from_points(self.dim_ambient(), tight)
                .complete_representations()?;
            if facet.dim_affine()? != k - 1 {
                return Err(GeomError::Internal(
                    "irredundant halfspace is not a facet".to_string(),
                ));
            }
            for s in facet.triangulate()? {
                let mut vs = vec![apex.clone()];
                vs.extend(s.vertices().iter().cloned());
                out.push(Simplex::new(vs)?);
            }
        }
        Ok(out)
    }

    /// Lattice-normalized volume of the polytope inside its affine span.
    pub fn volume(&self) -> Result<Rat, GeomError> {
        let frame = LatticeFrame::for_polytope(self)?;
        let mut total = Rat::zero();
        for s in self.triangulate()? {
            total += s.volume(&frame);
        }
        Ok(total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    fn pts(vs: &[&[i64]]) -> Vec<RationalVector> {
        vs.iter().map(|v| RationalVector::from_ints(v)).collect()
    }

    /// Shoelace oracle for the area of a convex polygon given unordered
    /// vertices; orders them around the centroid by half-plane sweeps.
    fn shoelace_area(points: &[RationalVector]) -> Rat {
        let mut ordered = points.to_vec();
        // Sort around the first point by orientation predicate.
        let pivot = ordered.remove(0);
        ordered.sort_by(|a, b| {
            let cross = (a.coord(0) - pivot.coord(0)) * (b.coord(1) - pivot.coord(1))
                - (a.coord(1) - pivot.coord(1)) * (b.coord(0) - pivot.coord(0));
            Rat::zero().cmp(&cross)
        });
        let mut ring = vec![pivot];
        ring.extend(ordered);
        let n = ring.len();
        let mut twice = Rat::zero();
        for i in 0..n {
            let a = &ring[i];
            let b = &ring[(i + 1) % n];
            twice += a.coord(0) * b.coord(1) - b.coord(0) * a.coord(1);
        }
        twice.abs() / rat_int(2)
    }

    #[test]
    fn unit_square_splits_into_two_triangles() {
        let p = Polytope::from_points(2, pts(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]))
            .complete_representations()
            .unwrap();
        let tris = p.triangulate().unwrap();
        assert_eq!(tris.len(), 2);
        let frame = LatticeFrame::for_polytope(&p).unwrap();
        let vols: Vec<Rat> = tris.iter().map(|t| t.volume(&frame)).collect();
        assert_eq!(vols, vec![rat(1, 2), rat(1, 2)]);
        assert_eq!(p.volume().unwrap(), rat_int(1));
    }

    #[test]
    fn trapezoid_area_matches_shoelace_oracle() {
        let vs = pts(&[&[-1, 0], &[-1, 2], &[2, -1], &[0, -1]]);
        let expected = shoelace_area(&vs);
        assert_eq!(expected, rat_int(4));
        let p = Polytope::from_points(2, vs)
            .complete_representations()
            .unwrap();
        let tris = p.triangulate().unwrap();
        assert_eq!(tris.len(), 2);
        assert_eq!(p.volume().unwrap(), expected);
    }

    #[test]
    fn simplex_triangulates_to_itself() {
        let p = Polytope::from_points(2, pts(&[&[0, 0], &[1, 0], &[0, 1]]))
            .complete_representations()
            .unwrap();
        let tris = p.triangulate().unwrap();
        assert_eq!(tris.len(), 1);
        assert_eq!(p.volume().unwrap(), rat(1, 2));
    }

    #[test]
    fn three_dimensional_cube_volume() {
        let mut corners = Vec::new();
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    corners.push(RationalVector::from_ints(&[x, y, z]));
                }
            }
        }
        let p = Polytope::from_points(3, corners)
            .complete_representations()
            .unwrap();
        assert_eq!(p.volume().unwrap(), rat_int(1));
        let tris = p.triangulate().unwrap();
        let frame = LatticeFrame::for_polytope(&p).unwrap();
        let total: Rat = tris.iter().map(|t| t.volume(&frame)).sum();
        assert_eq!(total, rat_int(1));
    }

    #[test]
    fn diagonal_segment_has_lattice_length() {
        // From (0,0) to (2,2): two lattice steps of (1,1).
        let p = Polytope::from_points(2, pts(&[&[0, 0], &[2, 2]]))
            .complete_representations()
            .unwrap();
        assert_eq!(p.volume().unwrap(), rat_int(2));
    }

    #[test]
    fn point_volume_is_one() {
        let p = Polytope::from_points(2, pts(&[&[3, 4]]))
            .complete_representations()
            .unwrap();
        assert_eq!(p.volume().unwrap(), rat_int(1));
    }
}
