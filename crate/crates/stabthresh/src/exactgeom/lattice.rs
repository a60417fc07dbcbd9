//! Lattice point enumeration in dilated polytopes.

use super::polytope::Polytope;
use super::vector::RationalVector;
use super::GeomError;
use crate::rat::{Int, Rat};

impl Polytope {
    /// All `u` with `u` in `m * P` and `u - m * shift` integral, in
    /// lexicographic order.
    pub fn lattice_points(
        &self,
        m: u64,
        shift: &RationalVector,
    ) -> Result<Vec<RationalVector>, GeomError> {
        assert!(m >= 1, "scale must be a positive integer");
        let vertices = self.vertices()?;
        let hrep = self.halfspaces()?;
        let dim = self.dim_ambient();
        if shift.dim() != dim {
            return Err(GeomError::DimensionMismatch);
        }
        let m_rat = Rat::from_integer(Int::from(m));

        // Integer ranges for z where u = m * shift + z.
        let mut lows = Vec::with_capacity(dim);
        let mut highs = Vec::with_capacity(dim);
        for i in 0..dim {
            let min = vertices
                .iter()
                .map(|v| v.coord(i))
                .min()
                .expect("nonempty vertex list");
            let max = vertices.iter().map(|v| v.coord(i)).max().unwrap();
            let lo = (min * &m_rat - shift.coord(i) * &m_rat).ceil().to_integer();
            let hi = (max * &m_rat - shift.coord(i) * &m_rat).floor().to_integer();
            lows.push(lo);
            highs.push(hi);
        }
        if lows.iter().zip(&highs).any(|(lo, hi)| lo > hi) {
            return Ok(Vec::new());
        }

        let mut out = Vec::new();
        let mut z: Vec<Int> = lows.clone();
        'sweep: loop {
            let u = RationalVector::new(
                (0..dim)
                    .map(|i| Rat::from_integer(z[i].clone()) + shift.coord(i) * &m_rat)
                    .collect(),
            );
            let inside = hrep
                .iter()
                .all(|h| u.dot(h.normal()) >= -(h.offset() * &m_rat));
            if inside {
                out.push(u);
            }
            // Lexicographic odometer, last coordinate fastest.
            let mut advanced = false;
            for i in (0..dim).rev() {
                if z[i] < highs[i] {
                    z[i] += 1;
                    for k in i + 1..dim {
                        z[k] = lows[k].clone();
                    }
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                break 'sweep;
            }
        }
        Ok(out)
    }

    /// Number of lattice points of `m * P` (shift zero).
    pub fn count_lattice_points(&self, m: u64) -> Result<usize, GeomError> {
        Ok(self
            .lattice_points(m, &RationalVector::zeros(self.dim_ambient()))?
            .len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn pts(vs: &[&[i64]]) -> Vec<RationalVector> {
        vs.iter().map(|v| RationalVector::from_ints(v)).collect()
    }

    fn complete(points: Vec<RationalVector>) -> Polytope {
        let dim = points[0].dim();
        Polytope::from_points(dim, points)
            .complete_representations()
            .unwrap()
    }

    #[test]
    fn projective_plane_has_ten_sections() {
        // Direct enumeration of {(x, y) : x, y >= -1, x + y <= 1} gives 10,
        // matching the dimension count 10 for plane cubics.
        let p = complete(pts(&[&[-1, -1], &[2, -1], &[-1, 2]]));
        let points = p
            .lattice_points(1, &RationalVector::zeros(2))
            .unwrap();
        assert_eq!(points.len(), 10);
        let mut brute = Vec::new();
        for x in -1i64..=2 {
            for y in -1i64..=2 {
                if x + y <= 1 {
                    brute.push(RationalVector::from_ints(&[x, y]));
                }
            }
        }
        brute.sort();
        assert_eq!(points, brute);
    }

    #[test]
    fn origin_only_for_the_point_polytope() {
        let p = complete(pts(&[&[0, 0]]));
        let points = p
            .lattice_points(1, &RationalVector::zeros(2))
            .unwrap();
        assert_eq!(points, pts(&[&[0, 0]]));
    }

    #[test]
    fn doubled_unit_square_is_a_three_by_three_grid() {
        let p = complete(pts(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]));
        let points = p
            .lattice_points(2, &RationalVector::zeros(2))
            .unwrap();
        assert_eq!(points.len(), 9);
    }

    #[test]
    fn shifted_lattice_points() {
        // [0, 1] at m = 1 against the lattice 1/2 + Z.
        let p = complete(pts(&[&[0], &[1]]));
        let shift = RationalVector::new(vec![rat(1, 2)]);
        let points = p.lattice_points(1, &shift).unwrap();
        assert_eq!(points, vec![RationalVector::new(vec![rat(1, 2)])]);
    }

    #[test]
    fn points_come_out_in_lexicographic_order() {
        let p = complete(pts(&[&[-1, -1], &[2, -1], &[-1, 2]]));
        let points = p
            .lattice_points(1, &RationalVector::zeros(2))
            .unwrap();
        let mut sorted = points.clone();
        sorted.sort();
        assert_eq!(points, sorted);
    }

    #[test]
    fn segment_in_the_plane() {
        let p = complete(pts(&[&[0, 0], &[2, 2]]));
        let points = p
            .lattice_points(1, &RationalVector::zeros(2))
            .unwrap();
        assert_eq!(points, pts(&[&[0, 0], &[1, 1], &[2, 2]]));
    }

    #[test]
    fn ehrhart_counts_for_the_unit_square() {
        let p = complete(pts(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]));
        for m in 1..=5u64 {
            assert_eq!(p.count_lattice_points(m).unwrap() as u64, (m + 1) * (m + 1));
        }
    }
}
