//! Double description method for pointed polyhedral cones over exact integers.
//!
//! Enumerates the extreme rays of `{x : a_i . x >= 0}` by inserting the
//! inequalities one at a time into an initial simplicial cone. Sized for
//! desk-scale inputs; everything is deterministic.

use super::matrix::RationalMatrix;
use super::vector::RationalVector;
use crate::rat::{gcd_all, Int, Rat};
use num::traits::{Signed, Zero};
use std::cmp::Ordering;

#[derive(Clone, Debug)]
struct Ray {
    vec: Vec<Int>,
    /// Tightness against the constraints processed so far, by processed index.
    tight: Vec<bool>,
}

fn dot(a: &[Int], b: &[Int]) -> Int {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn make_primitive(mut v: Vec<Int>) -> Vec<Int> {
    let g = gcd_all(&v);
    if !g.is_zero() {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
    v
}

fn lex_cmp_ints(a: &[Int], b: &[Int]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            ord => return ord,
        }
    }
    Ordering::Equal
}

/// Extreme rays of the pointed cone `{x in Q^dim : row . x >= 0 for all rows}`.
///
/// Requires the rows to have full rank `dim` (the cone is then pointed).
/// Returns primitive integer generators in lexicographic order; the list is
/// empty when the cone is `{0}`.
pub fn extreme_rays(rows: &[Vec<Int>], dim: usize) -> Result<Vec<Vec<Int>>, RankDeficient> {
    assert!(rows.iter().all(|r| r.len() == dim), "ragged constraint rows");
    // Deduplicate identical constraints, keeping first occurrences.
    let mut unique: Vec<Vec<Int>> = Vec::new();
    for r in rows {
        let p = make_primitive(r.clone());
        if !unique.contains(&p) {
            unique.push(p);
        }
    }

    let as_rational: Vec<RationalVector> = unique
        .iter()
        .map(|r| RationalVector::new(r.iter().cloned().map(Rat::from_integer).collect()))
        .collect();
    let mat = RationalMatrix::from_rows(&as_rational);
    let base = mat.independent_row_indices();
    if base.len() < dim {
        return Err(RankDeficient);
    }

    // Initial simplicial cone from the first dim independent rows: its
    // extreme rays are the columns of the inverse of that square system.
    let base_rows: Vec<RationalVector> = base.iter().map(|&i| as_rational[i].clone()).collect();
    let inv = RationalMatrix::from_rows(&base_rows)
        .inverse()
        .expect("independent rows form an invertible system");
    let mut processed: Vec<Vec<Int>> = base.iter().map(|&i| unique[i].clone()).collect();
    let mut rays: Vec<Ray> = (0..dim)
        .map(|j| {
            let col = inv.column(j);
            let vec = make_primitive(
                col.primitive()
                    .expect("inverse column is nonzero"),
            );
            Ray {
                tight: processed.iter().map(|c| dot(c, &vec).is_zero()).collect(),
                vec,
            }
        })
        .collect();

    let remaining: Vec<usize> = (0..unique.len()).filter(|i| !base.contains(i)).collect();
    for idx in remaining {
        let h = &unique[idx];
        let signs: Vec<Int> = rays.iter().map(|r| dot(h, &r.vec)).collect();
        let has_negative = signs.iter().any(|s| s.is_negative());
        if has_negative {
            let mut next: Vec<Ray> = Vec::new();
            for (r, s) in rays.iter().zip(&signs) {
                if !s.is_negative() {
                    next.push(r.clone());
                }
            }
            for (i, ri) in rays.iter().enumerate() {
                if !signs[i].is_positive() {
                    continue;
                }
                for (j, rj) in rays.iter().enumerate() {
                    if !signs[j].is_negative() {
                        continue;
                    }
                    if !adjacent(&rays, i, j) {
                        continue;
                    }
                    // Positive combination landing on the hyperplane h = 0.
                    let w: Vec<Int> = ri
                        .vec
                        .iter()
                        .zip(&rj.vec)
                        .map(|(a, b)| &signs[i] * b - &signs[j] * a)
                        .collect();
                    let w = make_primitive(w);
                    if w.iter().all(Int::is_zero) {
                        continue;
                    }
                    if next.iter().any(|r| r.vec == w) {
                        continue;
                    }
                    next.push(Ray {
                        tight: Vec::new(),
                        vec: w,
                    });
                }
            }
            rays = next;
        }
        processed.push(h.clone());
        for r in rays.iter_mut() {
            r.tight = processed.iter().map(|c| dot(c, &r.vec).is_zero()).collect();
        }
        if rays.is_empty() {
            break;
        }
    }

    let mut out: Vec<Vec<Int>> = rays.into_iter().map(|r| r.vec).collect();
    out.sort_by(|a, b| lex_cmp_ints(a, b));
    Ok(out)
}

/// Combinatorial adjacency: rays i and j are adjacent iff no third ray is
/// tight on every constraint tight for both.
fn adjacent(rays: &[Ray], i: usize, j: usize) -> bool {
    let common: Vec<usize> = rays[i]
        .tight
        .iter()
        .zip(&rays[j].tight)
        .enumerate()
        .filter_map(|(k, (a, b))| (*a && *b).then_some(k))
        .collect();
    for (k, r) in rays.iter().enumerate() {
        if k == i || k == j {
            continue;
        }
        if common.iter().all(|&c| r.tight[c]) {
            return false;
        }
    }
    true
}

/// The constraint rows do not span the ambient space; the cone is not pointed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RankDeficient;
