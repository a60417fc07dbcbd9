//! Section spaces of dilated divisor polytopes and basis-type averages.
//!
//! The sections of the level-`m` space are spanned by the lattice monomials
//! of `m P`. A toric valuation takes the minimum of its monomial values on
//! any section, which makes the monomial basis compatible and lets the
//! averaged value over any basis be compared against the compatible
//! supremum exactly.

use crate::exactgeom::RationalVector;
use crate::rat::{denominator_lcm, Int, Rat};
use crate::toric::{ToricError, ToricFanoDatum, ToricValuation};
use num::traits::{One, Signed, Zero};
use num::Integer;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use thiserror::Error;

/// Seed for the internal compatibility probe stream. Fixed so that probe
/// verdicts are reproducible across runs and platforms.
pub const COMPAT_PROBE_SEED: u64 = 0x5741_4243_0001;

/// Number of pseudo-random combinations probed by `is_compatible`.
const COMPAT_PROBE_COUNT: usize = 50;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BasisError {
    #[error(transparent)]
    Toric(#[from] ToricError),
    #[error("section has empty support")]
    EmptySection,
    #[error("sections do not form a basis (singular coefficient matrix)")]
    SingularBasis,
    #[error("basis must contain exactly {expected} sections, got {got}")]
    WrongBasisSize { expected: usize, got: usize },
    #[error("invalid decomposition: {0}")]
    InvalidPartition(String),
    #[error("monomial index {0} out of range")]
    MonomialIndex(usize),
}

/// The space of sections at level `m`: lattice monomials of `m P`.
#[derive(Clone, Debug)]
pub struct SectionSpace {
    datum: ToricFanoDatum,
    m: u64,
    monomials: Vec<RationalVector>,
}

impl SectionSpace {
    pub fn new(datum: ToricFanoDatum, m: u64) -> Result<Self, BasisError> {
        let monomials = datum
            .anticanonical_polytope()
            .lattice_points(m, &RationalVector::zeros(datum.dim()))
            .map_err(ToricError::from)?;
        if monomials.is_empty() {
            return Err(BasisError::Toric(ToricError::NoSections));
        }
        Ok(Self {
            datum,
            m,
            monomials,
        })
    }

    pub fn datum(&self) -> &ToricFanoDatum {
        &self.datum
    }

    pub fn level(&self) -> u64 {
        self.m
    }

    pub fn monomials(&self) -> &[RationalVector] {
        &self.monomials
    }

    /// Dimension `N_m` of the section space.
    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    /// Value of the valuation on the monomial `chi^u` as a section:
    /// `m v(D_0) + <u, v>`.
    pub fn monomial_value(&self, v: &ToricValuation, idx: usize) -> Result<Rat, BasisError> {
        if idx >= self.monomials.len() {
            return Err(BasisError::MonomialIndex(idx));
        }
        let v_d0 = self
            .datum
            .valuation_on_divisor(v, &self.datum.reference_divisor())?;
        Ok(self.value_with_d0(&v_d0, v, idx))
    }

    fn value_with_d0(&self, v_d0: &Rat, v: &ToricValuation, idx: usize) -> Rat {
        Rat::from_integer(Int::from(self.m)) * v_d0 + self.monomials[idx].dot(v.vector())
    }

    /// Value of the valuation on a section: the minimum over its support.
    pub fn section_value(&self, v: &ToricValuation, s: &Section) -> Result<Rat, BasisError> {
        let v_d0 = self
            .datum
            .valuation_on_divisor(v, &self.datum.reference_divisor())?;
        Ok(self.section_value_with_d0(&v_d0, v, s))
    }

    fn section_value_with_d0(&self, v_d0: &Rat, v: &ToricValuation, s: &Section) -> Rat {
        s.support()
            .map(|idx| self.value_with_d0(v_d0, v, idx))
            .min()
            .expect("sections have nonempty support")
    }

    /// `v` of the basis-type divisor of `b`: the average of the section
    /// values divided by `m`.
    pub fn sm_of_basis(&self, v: &ToricValuation, b: &Basis) -> Result<Rat, BasisError> {
        let v_d0 = self
            .datum
            .valuation_on_divisor(v, &self.datum.reference_divisor())?;
        let total: Rat = b
            .sections()
            .iter()
            .map(|s| self.section_value_with_d0(&v_d0, v, s))
            .sum();
        let count = Rat::from_integer(Int::from(b.sections().len() as u64));
        Ok(total / (Rat::from_integer(Int::from(self.m)) * count))
    }

    /// The supremum of `sm_of_basis` over all bases, attained on the
    /// monomial basis.
    pub fn sm_supremum(&self, v: &ToricValuation) -> Result<Rat, BasisError> {
        self.sm_of_basis(v, &self.monomial_basis())
    }

    /// Weighted average of the per-part suprema of a decomposition.
    pub fn sm_of_decomposition(
        &self,
        v: &ToricValuation,
        dec: &Decomposition,
    ) -> Result<Rat, BasisError> {
        dec.check_against(self)?;
        let v_d0 = self
            .datum
            .valuation_on_divisor(v, &self.datum.reference_divisor())?;
        let m_rat = Rat::from_integer(Int::from(self.m));
        let mut weighted = Rat::zero();
        for part in dec.parts() {
            // The supremum on a part is the mean of its monomial values over
            // m; weighting by the part dimension cancels the mean divisor.
            let part_total: Rat = part
                .iter()
                .map(|&idx| self.value_with_d0(&v_d0, v, idx))
                .sum();
            weighted += part_total / &m_rat;
        }
        Ok(weighted / Rat::from_integer(Int::from(self.dim() as u64)))
    }

    /// Probes the compatibility identity `v(s) = min v(s_j)` on single
    /// sections, pairwise sums and differences, and a fixed pseudo-random
    /// family. A `false` is a witnessed failure; `true` means no probe
    /// falsified the identity.
    pub fn is_compatible(&self, v: &ToricValuation, b: &Basis) -> Result<bool, BasisError> {
        let v_d0 = self
            .datum
            .valuation_on_divisor(v, &self.datum.reference_divisor())?;
        let n = b.sections().len();
        let values: Vec<Rat> = b
            .sections()
            .iter()
            .map(|s| self.section_value_with_d0(&v_d0, v, s))
            .collect();

        let mut probes: Vec<Vec<Rat>> = Vec::new();
        for j in 0..n {
            let mut c = vec![Rat::zero(); n];
            c[j] = Rat::one();
            probes.push(c);
        }
        for i in 0..n {
            for j in i + 1..n {
                let mut sum = vec![Rat::zero(); n];
                sum[i] = Rat::one();
                sum[j] = Rat::one();
                probes.push(sum);
                let mut diff = vec![Rat::zero(); n];
                diff[i] = Rat::one();
                diff[j] = -Rat::one();
                probes.push(diff);
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(COMPAT_PROBE_SEED);
        let target = probes.len() + COMPAT_PROBE_COUNT;
        while probes.len() < target {
            let c: Vec<Rat> = (0..n)
                .map(|_| Rat::from_integer(Int::from(rng.gen_range(-3i64..=3))))
                .collect();
            if c.iter().all(Rat::is_zero) {
                continue;
            }
            probes.push(c);
        }

        for coeffs in &probes {
            let combined = combine(b.sections(), coeffs).expect("basis combinations are nonzero");
            let direct = self.section_value_with_d0(&v_d0, v, &combined);
            let expected = coeffs
                .iter()
                .zip(&values)
                .filter(|(c, _)| !c.is_zero())
                .map(|(_, val)| val.clone())
                .min()
                .expect("probe has a nonzero coefficient");
            if direct != expected {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Section `chi^u` for the monomial at `idx`.
    pub fn monomial_section(&self, idx: usize) -> Section {
        Section::monomial(idx)
    }

    /// The canonical monomial basis.
    pub fn monomial_basis(&self) -> Basis {
        Basis {
            sections: (0..self.dim()).map(Section::monomial).collect(),
        }
    }

    /// Seeded random basis: integer coefficients in `{-3..3}`, singular
    /// draws rejected.
    pub fn random_basis(&self, rng: &mut ChaCha8Rng) -> Basis {
        let n = self.dim();
        loop {
            let rows: Vec<Vec<Int>> = (0..n)
                .map(|_| (0..n).map(|_| Int::from(rng.gen_range(-3i64..=3))).collect())
                .collect();
            if rows.iter().any(|r| r.iter().all(Int::is_zero)) {
                continue;
            }
            if !is_invertible_int(&rows) {
                continue;
            }
            let sections = rows
                .into_iter()
                .map(|row| {
                    Section::new(
                        row.into_iter()
                            .enumerate()
                            .filter(|(_, c)| !c.is_zero())
                            .map(|(j, c)| (j, Rat::from_integer(c)))
                            .collect(),
                    )
                    .expect("nonzero row")
                })
                .collect();
            return Basis { sections };
        }
    }

    /// Seeded random partition of the monomial index set.
    pub fn random_partition(&self, rng: &mut ChaCha8Rng) -> Decomposition {
        let n = self.dim();
        let k = rng.gen_range(1..=n.min(5));
        let mut parts: Vec<Vec<usize>> = vec![Vec::new(); k];
        for idx in 0..n {
            parts[rng.gen_range(0..k)].push(idx);
        }
        parts.retain(|p| !p.is_empty());
        Decomposition { parts }
    }
}

/// A section written in the monomial basis, sparse with nonzero entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    coeffs: BTreeMap<usize, Rat>,
}

impl Section {
    pub fn new(coeffs: BTreeMap<usize, Rat>) -> Result<Self, BasisError> {
        let coeffs: BTreeMap<usize, Rat> =
            coeffs.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if coeffs.is_empty() {
            return Err(BasisError::EmptySection);
        }
        Ok(Self { coeffs })
    }

    pub fn monomial(idx: usize) -> Section {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(idx, Rat::one());
        Section { coeffs }
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn coeff(&self, idx: usize) -> Option<&Rat> {
        self.coeffs.get(&idx)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }
}

/// Exact linear combination; `None` when everything cancels.
pub fn combine(sections: &[Section], coeffs: &[Rat]) -> Option<Section> {
    assert_eq!(sections.len(), coeffs.len());
    let mut acc: BTreeMap<usize, Rat> = BTreeMap::new();
    for (s, c) in sections.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for (&idx, val) in &s.coeffs {
            let entry = acc.entry(idx).or_insert_with(Rat::zero);
            *entry += c * val;
        }
    }
    acc.retain(|_, v| !v.is_zero());
    if acc.is_empty() {
        None
    } else {
        Some(Section { coeffs: acc })
    }
}

/// A basis of the section space; construction checks exact invertibility.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Basis {
    sections: Vec<Section>,
}

impl Basis {
    pub fn new(space: &SectionSpace, sections: Vec<Section>) -> Result<Self, BasisError> {
        let n = space.dim();
        if sections.len() != n {
            return Err(BasisError::WrongBasisSize {
                expected: n,
                got: sections.len(),
            });
        }
        if let Some(bad) = sections
            .iter()
            .flat_map(Section::support)
            .find(|&idx| idx >= n)
        {
            return Err(BasisError::MonomialIndex(bad));
        }
        // Integerize rows; row scaling preserves invertibility.
        let rows: Vec<Vec<Int>> = sections
            .iter()
            .map(|s| {
                let vals: Vec<Rat> = s.coeffs.values().cloned().collect();
                let l = Rat::from_integer(denominator_lcm(&vals));
                let mut row = vec![Int::zero(); n];
                for (&idx, c) in &s.coeffs {
                    row[idx] = (c * &l).to_integer();
                }
                row
            })
            .collect();
        if !is_invertible_int(&rows) {
            return Err(BasisError::SingularBasis);
        }
        Ok(Self { sections })
    }

    pub fn sections(&self) -> &[Section] {
        &self.sections
    }
}

/// A decomposition of the section space into monomial-spanned pieces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    parts: Vec<Vec<usize>>,
}

impl Decomposition {
    pub fn new(space: &SectionSpace, parts: Vec<Vec<usize>>) -> Result<Self, BasisError> {
        let dec = Self { parts };
        dec.check_against(space)?;
        Ok(dec)
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    fn check_against(&self, space: &SectionSpace) -> Result<(), BasisError> {
        let n = space.dim();
        let mut seen = vec![false; n];
        for part in &self.parts {
            if part.is_empty() {
                return Err(BasisError::InvalidPartition("empty part".into()));
            }
            for &idx in part {
                if idx >= n {
                    return Err(BasisError::InvalidPartition(format!(
                        "index {idx} out of range"
                    )));
                }
                if seen[idx] {
                    return Err(BasisError::InvalidPartition(format!("index {idx} repeated")));
                }
                seen[idx] = true;
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(BasisError::InvalidPartition(
                "parts do not cover every monomial".into(),
            ));
        }
        Ok(())
    }
}

/// Exact invertibility of an integer matrix: a determinant screen modulo a
/// 61-bit prime, with a fraction-free Bareiss determinant deciding the
/// residual zero cases.
fn is_invertible_int(rows: &[Vec<Int>]) -> bool {
    let n = rows.len();
    if n == 0 {
        return true;
    }
    if det_mod_p(rows) != 0 {
        return true;
    }
    !bareiss_det(rows.to_vec()).is_zero()
}

const SCREEN_PRIME: u64 = (1 << 61) - 1;

fn det_mod_p(rows: &[Vec<Int>]) -> u64 {
    let p = SCREEN_PRIME;
    let n = rows.len();
    let modulus = Int::from(p);
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|v| {
                    let r = v.mod_floor(&modulus);
                    r.to_u64_digits().1.first().copied().unwrap_or(0)
                })
                .collect()
        })
        .collect();
    let mulp = |a: u64, b: u64| ((a as u128 * b as u128) % p as u128) as u64;
    let powp = |mut base: u64, mut exp: u64| {
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mulp(acc, base);
            }
            base = mulp(base, base);
            exp >>= 1;
        }
        acc
    };
    let mut det = 1u64;
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| m[r][col] != 0) else {
            return 0;
        };
        if pivot != col {
            m.swap(pivot, col);
            det = p - det;
        }
        det = mulp(det, m[col][col]);
        let inv = powp(m[col][col], p - 2);
        for r in col + 1..n {
            if m[r][col] == 0 {
                continue;
            }
            let factor = mulp(m[r][col], inv);
            for c in col..n {
                let sub = mulp(factor, m[col][c]);
                m[r][c] = (m[r][c] + p - sub) % p;
            }
        }
    }
    det % p
}

/// Fraction-free determinant (Bareiss).
fn bareiss_det(mut m: Vec<Vec<Int>>) -> Int {
    let n = m.len();
    if n == 0 {
        return Int::one();
    }
    let mut sign = 1i64;
    let mut prev = Int::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(pivot) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return Int::zero();
            };
            m.swap(k, pivot);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev;
            }
            m[i][k] = Int::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// Counters from a dominance / decomposition sweep.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuiteStats {
    pub bases_checked: usize,
    pub dominance_violations: usize,
    pub strict_inequalities: usize,
    pub partitions_checked: usize,
    pub partition_mismatches: usize,
}

impl SuiteStats {
    pub fn passed(&self) -> bool {
        self.dominance_violations == 0
            && self.partition_mismatches == 0
            && self.strict_inequalities > 0
    }

    pub fn absorb(&mut self, other: &SuiteStats) {
        self.bases_checked += other.bases_checked;
        self.dominance_violations += other.dominance_violations;
        self.strict_inequalities += other.strict_inequalities;
        self.partitions_checked += other.partitions_checked;
        self.partition_mismatches += other.partition_mismatches;
    }
}

/// Runs the dominance and decomposition sweeps on one datum: for every
/// level up to `max_m` and every ray valuation, `bases_per_pair` seeded
/// random bases are compared against the compatible supremum, and
/// `partitions_per_pair` random partitions are checked to reproduce it.
pub fn dominance_suite(
    datum: &ToricFanoDatum,
    max_m: u64,
    bases_per_pair: usize,
    partitions_per_pair: usize,
    seed: u64,
) -> Result<SuiteStats, BasisError> {
    let mut stats = SuiteStats::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for m in 1..=max_m {
        let space = SectionSpace::new(datum.clone(), m)?;
        for ray in datum.rays() {
            let v = ToricValuation::new(ray.clone())?;
            let sup = space.sm_supremum(&v)?;
            for _ in 0..bases_per_pair {
                let basis = space.random_basis(&mut rng);
                let value = space.sm_of_basis(&v, &basis)?;
                stats.bases_checked += 1;
                if value > sup {
                    stats.dominance_violations += 1;
                } else if value < sup {
                    stats.strict_inequalities += 1;
                }
            }
            for _ in 0..partitions_per_pair {
                let dec = space.random_partition(&mut rng);
                stats.partitions_checked += 1;
                if space.sm_of_decomposition(&v, &dec)? != sup {
                    stats.partition_mismatches += 1;
                }
            }
        }
    }
    Ok(stats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};
    use crate::toric::tests::{bl1_p2, p2};

    fn p1() -> ToricFanoDatum {
        ToricFanoDatum::new(
            1,
            vec![
                RationalVector::from_ints(&[1]),
                RationalVector::from_ints(&[-1]),
            ],
            vec![rat_int(1); 2],
            Some(vec![vec![0], vec![1]]),
        )
        .unwrap()
    }

    fn ray_valuation(datum: &ToricFanoDatum, idx: usize) -> ToricValuation {
        ToricValuation::new(datum.rays()[idx].clone()).unwrap()
    }

    fn monomial_index(space: &SectionSpace, coords: &[i64]) -> usize {
        space
            .monomials()
            .iter()
            .position(|u| u == &RationalVector::from_ints(coords))
            .unwrap()
    }

    #[test]
    fn monomial_and_section_values() {
        let space = SectionSpace::new(p2(), 1).unwrap();
        assert_eq!(space.dim(), 10);
        let v = ray_valuation(space.datum(), 0);
        // Single monomial: the value is m v(D_0) + <u, v>.
        let idx = monomial_index(&space, &[-1, 0]);
        assert_eq!(space.monomial_value(&v, idx).unwrap(), rat_int(0));

        // All ten monomials summed: min over the support.
        let all: Section =
            Section::new((0..space.dim()).map(|j| (j, Rat::one())).collect()).unwrap();
        assert_eq!(space.section_value(&v, &all).unwrap(), rat_int(0));

        // Two-term section: the smaller of the two values.
        let lo = monomial_index(&space, &[-1, 0]);
        let hi = monomial_index(&space, &[1, 0]);
        let two = combine(
            &[Section::monomial(lo), Section::monomial(hi)],
            &[Rat::one(), Rat::one()],
        )
        .unwrap();
        assert_eq!(space.section_value(&v, &two).unwrap(), rat_int(0));
    }

    #[test]
    fn sm_of_monomial_basis_on_p2() {
        let space = SectionSpace::new(p2(), 1).unwrap();
        let v = ray_valuation(space.datum(), 0);
        // Sum of x-coordinates over the ten points is zero by symmetry.
        assert_eq!(space.sm_supremum(&v).unwrap(), rat_int(1));
    }

    #[test]
    fn sm_on_p1_segment() {
        let space = SectionSpace::new(p1(), 1).unwrap();
        let v = ray_valuation(space.datum(), 0);
        // Points -1, 0, 1 give values 0, 1, 2 with mean 1.
        assert_eq!(space.sm_supremum(&v).unwrap(), rat_int(1));
    }

    #[test]
    fn scaling_and_permutation_leave_sm_unchanged() {
        let space = SectionSpace::new(p2(), 1).unwrap();
        let v = ray_valuation(space.datum(), 1);
        let n = space.dim();
        let scaled = Basis::new(
            &space,
            (0..n)
                .map(|j| Section::new([(j, rat(3, 2))].into_iter().collect()).unwrap())
                .collect(),
        )
        .unwrap();
        let permuted = Basis::new(&space, (0..n).rev().map(Section::monomial).collect()).unwrap();
        let sup = space.sm_supremum(&v).unwrap();
        assert_eq!(space.sm_of_basis(&v, &scaled).unwrap(), sup);
        assert_eq!(space.sm_of_basis(&v, &permuted).unwrap(), sup);
    }

    #[test]
    fn supremum_matches_toric_finite_level_divisor() {
        for datum in [p1(), p2(), bl1_p2()] {
            for m in 1..=4 {
                let space = SectionSpace::new(datum.clone(), m).unwrap();
                let (divisor, _) = datum.finite_m_divisor(m).unwrap();
                for i in 0..datum.rays().len() {
                    let v = ray_valuation(&datum, i);
                    assert_eq!(
                        space.sm_supremum(&v).unwrap(),
                        divisor.coeffs()[i],
                        "ray {i} at level {m}"
                    );
                }
            }
        }
    }

    #[test]
    fn monomial_basis_is_compatible() {
        let space = SectionSpace::new(p2(), 1).unwrap();
        for i in 0..space.datum().rays().len() {
            let v = ray_valuation(space.datum(), i);
            assert!(space.is_compatible(&v, &space.monomial_basis()).unwrap());
        }
    }

    #[test]
    fn mixed_basis_is_caught_by_difference_probe() {
        // Sections chi^a + chi^b and chi^a - chi^b with v(chi^a) < v(chi^b):
        // their difference collapses to 2 chi^b, where the minimum rule fails.
        let space = SectionSpace::new(p2(), 1).unwrap();
        let v = ray_valuation(space.datum(), 0);
        let a = monomial_index(&space, &[-1, 0]);
        let b = monomial_index(&space, &[1, 0]);
        let mut sections: Vec<Section> = Vec::new();
        for j in 0..space.dim() {
            if j == a {
                sections.push(
                    combine(
                        &[Section::monomial(a), Section::monomial(b)],
                        &[Rat::one(), Rat::one()],
                    )
                    .unwrap(),
                );
            } else if j == b {
                sections.push(
                    combine(
                        &[Section::monomial(a), Section::monomial(b)],
                        &[Rat::one(), -Rat::one()],
                    )
                    .unwrap(),
                );
            } else {
                sections.push(Section::monomial(j));
            }
        }
        let basis = Basis::new(&space, sections).unwrap();
        assert!(!space.is_compatible(&v, &basis).unwrap());
        // Dominance still holds.
        let sup = space.sm_supremum(&v).unwrap();
        assert!(space.sm_of_basis(&v, &basis).unwrap() <= sup);
    }

    #[test]
    fn unipotent_triangular_basis_stays_compatible() {
        // On the segment at level 2, add higher-valuation monomials to
        // lower ones; the leading terms never cancel.
        let datum = p1();
        let space = SectionSpace::new(datum, 2).unwrap();
        let v = ray_valuation(space.datum(), 0);
        let n = space.dim();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&j| space.monomial_value(&v, j).unwrap());
        let rank_of: BTreeMap<usize, usize> =
            order.iter().enumerate().map(|(r, &j)| (j, r)).collect();
        let sections: Vec<Section> = (0..n)
            .map(|j| {
                let coeffs: BTreeMap<usize, Rat> = (0..n)
                    .filter(|&k| k == j || rank_of[&k] > rank_of[&j])
                    .map(|k| (k, if k == j { Rat::one() } else { rat(2, 1) }))
                    .collect();
                Section::new(coeffs).unwrap()
            })
            .collect();
        let basis = Basis::new(&space, sections).unwrap();
        assert!(space.is_compatible(&v, &basis).unwrap());
        assert_eq!(
            space.sm_of_basis(&v, &basis).unwrap(),
            space.sm_supremum(&v).unwrap()
        );
    }

    #[test]
    fn decomposition_reproduces_supremum() {
        let space = SectionSpace::new(p2(), 1).unwrap();
        let v = ray_valuation(space.datum(), 2);
        let sup = space.sm_supremum(&v).unwrap();

        let one_part = Decomposition::new(&space, vec![(0..space.dim()).collect()]).unwrap();
        assert_eq!(space.sm_of_decomposition(&v, &one_part).unwrap(), sup);

        let singletons =
            Decomposition::new(&space, (0..space.dim()).map(|j| vec![j]).collect()).unwrap();
        assert_eq!(space.sm_of_decomposition(&v, &singletons).unwrap(), sup);

        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let dec = space.random_partition(&mut rng);
            assert_eq!(space.sm_of_decomposition(&v, &dec).unwrap(), sup);
        }
    }

    #[test]
    fn invalid_partitions_are_rejected() {
        let space = SectionSpace::new(p2(), 1).unwrap();
        assert!(matches!(
            Decomposition::new(&space, vec![vec![0, 1]]),
            Err(BasisError::InvalidPartition(_))
        ));
        assert!(matches!(
            Decomposition::new(&space, vec![(0..space.dim()).collect(), vec![0]]),
            Err(BasisError::InvalidPartition(_))
        ));
    }

    #[test]
    fn singular_sections_are_rejected() {
        let space = SectionSpace::new(p1(), 1).unwrap();
        let s = combine(
            &[Section::monomial(0), Section::monomial(1)],
            &[Rat::one(), Rat::one()],
        )
        .unwrap();
        let err = Basis::new(&space, vec![s.clone(), s, Section::monomial(2)]).unwrap_err();
        assert_eq!(err, BasisError::SingularBasis);
    }

    #[test]
    fn dominance_suite_runs_clean() {
        let stats = dominance_suite(&p2(), 2, 25, 10, 0xAB).unwrap();
        assert_eq!(stats.dominance_violations, 0);
        assert_eq!(stats.partition_mismatches, 0);
        assert!(stats.strict_inequalities > 0);
        assert_eq!(stats.bases_checked, 2 * 3 * 25);

        // Same seed, same counters.
        let again = dominance_suite(&p2(), 2, 25, 10, 0xAB).unwrap();
        assert_eq!(stats, again);
    }

    #[test]
    fn compatible_random_bases_attain_the_supremum() {
        let space = SectionSpace::new(p2(), 1).unwrap();
        let v = ray_valuation(space.datum(), 0);
        let sup = space.sm_supremum(&v).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let basis = space.random_basis(&mut rng);
            if space.is_compatible(&v, &basis).unwrap() {
                assert_eq!(space.sm_of_basis(&v, &basis).unwrap(), sup);
            }
        }
    }

    #[test]
    fn bareiss_matches_rational_det() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..30 {
            let n = rng.gen_range(1..=5);
            let rows: Vec<Vec<Int>> = (0..n)
                .map(|_| (0..n).map(|_| Int::from(rng.gen_range(-3i64..=3))).collect())
                .collect();
            let rational = crate::exactgeom::RationalMatrix::from_rows(
                &rows
                    .iter()
                    .map(|r| RationalVector::new(r.iter().cloned().map(Rat::from_integer).collect()))
                    .collect::<Vec<_>>(),
            )
            .det();
            assert_eq!(Rat::from_integer(bareiss_det(rows.clone())), rational);
            assert_eq!(is_invertible_int(&rows), !rational.is_zero());
        }
    }
}
