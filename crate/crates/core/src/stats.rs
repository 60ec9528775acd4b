//! Norm statistics: extremal norms (closed forms alongside exhaustive
//! search), minimum size for a fixed norm, MacMahon coefficients and the
//! distribution they define, dotted Young diagram counts, reciprocal-norm
//! sums and the expected norm.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::partitions::{enumerate, enumerate_with_largest, factorize, Partition, PartitionClass};
use crate::report::KnownIssue;
use crate::series::{macmahon_denominator, macmahon_weight, ReciprocalNormTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Source {
    ClosedForm,
    BruteForce,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Max,
    Min,
}

/// An extremal norm among the partitions of `n` in some class.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtremalResult {
    pub value: BigUint,
    /// Partitions attaining `value`, in enumeration order.
    pub witnesses: Vec<Partition>,
    pub source: Source,
    /// Set once the result has been compared with exhaustive search.
    pub agreement: Option<bool>,
    /// A published closed-form norm evaluated on its own, for comparison with
    /// `value` (which is always the product of the witness).
    pub formula_value: Option<BigUint>,
    pub known_issue: Option<KnownIssue>,
}

impl ExtremalResult {
    fn closed_form(witnesses: Vec<Partition>) -> Self {
        let value = witnesses[0].norm();
        debug_assert!(witnesses.iter().all(|w| w.norm() == value));
        Self {
            value,
            witnesses,
            source: Source::ClosedForm,
            agreement: None,
            formula_value: None,
            known_issue: None,
        }
    }

    /// Compares value and witness set with an oracle result and records the
    /// outcome in `agreement`.
    pub fn cross_check(mut self, oracle: &ExtremalResult) -> Self {
        let mine: BTreeSet<&Partition> = self.witnesses.iter().collect();
        let theirs: BTreeSet<&Partition> = oracle.witnesses.iter().collect();
        self.agreement = Some(self.value == oracle.value && mine == theirs);
        self
    }

    /// Whether the published formula (when there is one) matches the
    /// witness-derived value.
    pub fn formula_matches(&self) -> bool {
        self.formula_value.as_ref().is_none_or(|f| *f == self.value)
    }
}

fn from_frequencies(pairs: &[(u64, u64)]) -> Partition {
    Partition::from_frequencies(pairs.iter().copied()).expect("positive parts")
}

fn from_parts_u64(parts: &[u64]) -> Partition {
    Partition::from_frequencies(parts.iter().map(|&p| (p, 1))).expect("positive parts")
}

/// Maximum norm over all partitions of `n`: powers of three, with a 4 or
/// two 2s when `n ≡ 1 (mod 3)` and a single 2 when `n ≡ 2`. For `n = 0` the
/// result is the empty partition with norm 1.
pub fn max_norm(n: u64) -> ExtremalResult {
    let witnesses = match (n, n % 3) {
        (0, _) => vec![Partition::empty()],
        (1, _) => vec![from_frequencies(&[(1, 1)])],
        (_, 0) => vec![from_frequencies(&[(3, n / 3)])],
        (_, 1) => {
            let threes = (n - 4) / 3;
            // (3^a, 4) precedes (3^a, 2, 2) in enumeration order
            vec![
                from_frequencies(&[(3, threes), (4, 1)]),
                from_frequencies(&[(2, 2), (3, threes)]),
            ]
        }
        _ => vec![from_frequencies(&[(2, 1), (3, (n - 2) / 3)])],
    };
    ExtremalResult::closed_form(witnesses)
}

/// Maximum norm over partitions of `n` into odd parts. Sizes below 3 fall
/// back to exhaustive search.
pub fn max_norm_odd(n: u64) -> ExtremalResult {
    if n < 3 {
        return brute_extremal_norm(n, &PartitionClass::OddParts, Direction::Max)
            .expect("every n has an odd-part partition");
    }
    let witness = match n % 3 {
        0 => from_frequencies(&[(3, n / 3)]),
        1 => from_frequencies(&[(1, 1), (3, (n - 1) / 3)]),
        _ => from_frequencies(&[(3, (n - 5) / 3), (5, 1)]),
    };
    ExtremalResult::closed_form(vec![witness])
}

/// Writes `n = T_k + j` with `T_k = k(k+1)/2` and `-1 <= j <= k - 2`, if
/// possible.
pub fn triangular_decomposition(n: u64) -> Option<(u64, i64)> {
    let mut k = 1u64;
    loop {
        let t = k * (k + 1) / 2;
        if t > n + 1 {
            return None;
        }
        let j = n as i64 - t as i64;
        if j >= -1 && j <= k as i64 - 2 {
            return Some((k, j));
        }
        k += 1;
    }
}

/// Maximum norm over partitions of `n` into distinct parts. When
/// `n = T_k + j` with `-1 <= j <= k-2` the witness is `{2, ..., k+1}` minus
/// `k - j`, of norm `(k+1)!/(k-j)`. Sizes with no such decomposition (the
/// values `T_(k+1) - 2`) get the exhaustive result, flagged.
pub fn max_norm_distinct(n: u64) -> ExtremalResult {
    let decomposition = if n >= 2 {
        triangular_decomposition(n)
    } else {
        None
    };
    let Some((k, j)) = decomposition else {
        let mut r = brute_extremal_norm(n, &PartitionClass::Distinct, Direction::Max)
            .expect("every n has a distinct-part partition");
        if n >= 2 {
            r.known_issue = Some(KnownIssue::DistinctDecompositionGap);
        }
        return r;
    };
    let skip = (k as i64 - j) as u64;
    let parts: Vec<u64> = (2..=k + 1).filter(|&p| p != skip).collect();
    let mut r = ExtremalResult::closed_form(vec![from_parts_u64(&parts)]);
    let factorial: BigUint = (1..=k + 1).fold(BigUint::one(), |acc, v| acc * v);
    r.formula_value = Some(factorial / skip);
    r
}

/// The six shapes of the maximum-norm Rogers–Ramanujan partition of
/// `n = k(k+1) + j`, `0 <= j < 2k + 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RrCase {
    /// `j = 0`: `(2k, 2k-2, ..., 2)`.
    Even,
    /// `1 <= j < k`: the largest `j` parts of the even staircase raised by one.
    RaiseEven(u64),
    /// `j = k`: `(2k+1, 2k-1, ..., 3)`.
    Odd,
    /// `k < j < 2k`: the largest `j - k` parts of the odd staircase raised.
    RaiseOdd(u64),
    /// `j = 2k`: `(2k+2, 2k, ..., 4)`.
    ShiftedEven,
    /// `j = 2k + 1`: `(2k+3, 2k, 2k-2, ..., 4)`.
    ShiftedEvenTop,
}

/// `(k, j, case)` for `n >= 2`.
pub fn rr_decomposition(n: u64) -> Option<(u64, u64, RrCase)> {
    if n < 2 {
        return None;
    }
    let mut k = 1u64;
    while (k + 1) * (k + 2) <= n {
        k += 1;
    }
    let j = n - k * (k + 1);
    let case = if j == 0 {
        RrCase::Even
    } else if j < k {
        RrCase::RaiseEven(j)
    } else if j == k {
        RrCase::Odd
    } else if j < 2 * k {
        RrCase::RaiseOdd(j - k)
    } else if j == 2 * k {
        RrCase::ShiftedEven
    } else {
        RrCase::ShiftedEvenTop
    };
    Some((k, j, case))
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, v| acc * v)
}

fn pow2(e: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(2)).pow(e as i32)
}

/// The published norm formula for each Rogers–Ramanujan case, evaluated
/// independently of the witness.
fn rr_formula(k: u64, case: RrCase) -> BigRational {
    let f = |n: u64| BigRational::from_integer(factorial(n));
    let ki = k as i64;
    match case {
        RrCase::Even => pow2(ki) * f(k),
        RrCase::RaiseEven(j) => {
            let ji = j as i64;
            pow2(ki - 2 * ji) * f(k - j) * f(k - j + 1) * f(2 * k + 2)
                / (f(k + 1) * f(2 * (k - j) + 2))
        }
        RrCase::Odd => f(2 * k + 2) / (pow2(ki + 1) * f(k + 1)),
        RrCase::RaiseOdd(jp) => {
            let jpi = jp as i64;
            f(2 * (k - jp) + 2) * f(k + 1)
                / (pow2(ki - 2 * jpi + 1) * f(k - jp + 1) * f(k - jp + 1))
        }
        RrCase::ShiftedEven => pow2(ki + 1) * f(k + 1),
        RrCase::ShiftedEvenTop => {
            pow2(ki - 1) * BigRational::from_integer(BigInt::from(2 * k + 3)) * f(k)
        }
    }
}

/// Maximum norm over Rogers–Ramanujan partitions of `n` (consecutive parts
/// differ by at least two).
///
/// The witness is built from the case analysis; its product is the reported
/// value. The published factorial formula is evaluated separately into
/// `formula_value`; the `j = 2k` formula is known to be off by a factor of
/// two and is flagged. Sizes below 2 use exhaustive search.
pub fn max_norm_rr(n: u64) -> ExtremalResult {
    let Some((k, _j, case)) = rr_decomposition(n) else {
        return brute_extremal_norm(n, &PartitionClass::RogersRamanujan, Direction::Max)
            .expect("every n has a Rogers-Ramanujan partition");
    };
    // staircases, largest part first
    let even: Vec<u64> = (1..=k).rev().map(|i| 2 * i).collect();
    let odd: Vec<u64> = even.iter().map(|p| p + 1).collect();
    let shifted: Vec<u64> = even.iter().map(|p| p + 2).collect();
    let parts: Vec<u64> = match case {
        RrCase::Even => even,
        RrCase::RaiseEven(j) => even
            .iter()
            .enumerate()
            .map(|(i, &p)| if (i as u64) < j { p + 1 } else { p })
            .collect(),
        RrCase::Odd => odd,
        RrCase::RaiseOdd(jp) => odd
            .iter()
            .enumerate()
            .map(|(i, &p)| if (i as u64) < jp { p + 1 } else { p })
            .collect(),
        RrCase::ShiftedEven => shifted,
        RrCase::ShiftedEvenTop => {
            let mut s = shifted;
            s[0] += 1;
            s
        }
    };
    let mut r = ExtremalResult::closed_form(vec![from_parts_u64(&parts)]);
    let formula = rr_formula(k, case);
    r.formula_value = if formula.is_integer() {
        formula.to_integer().to_biguint()
    } else {
        None
    };
    if case == RrCase::ShiftedEven && !r.formula_matches() {
        r.known_issue = Some(KnownIssue::RogersRamanujanCaseFiveFormula);
    }
    r
}

/// Exhaustive extremal norm over the partitions of `n` in `class`, with all
/// tied witnesses in enumeration order. The search is split by largest part
/// across threads; the result does not depend on the split.
pub fn brute_extremal_norm(
    n: u64,
    class: &PartitionClass,
    direction: Direction,
) -> Result<ExtremalResult> {
    let scan = |iter: &mut dyn Iterator<Item = Partition>| -> Option<(BigUint, Vec<Partition>)> {
        let mut best: Option<(BigUint, Vec<Partition>)> = None;
        for lam in iter {
            let norm = lam.norm();
            match &mut best {
                None => best = Some((norm, vec![lam])),
                Some((value, witnesses)) => {
                    let better = match direction {
                        Direction::Max => norm > *value,
                        Direction::Min => norm < *value,
                    };
                    if better {
                        *value = norm;
                        *witnesses = vec![lam];
                    } else if norm == *value {
                        witnesses.push(lam);
                    }
                }
            }
        }
        best
    };
    let pieces: Vec<Option<(BigUint, Vec<Partition>)>> = if n < 24 {
        vec![scan(&mut enumerate(n, class))]
    } else {
        (1..=n)
            .rev()
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|largest| scan(&mut enumerate_with_largest(n, class, largest)))
            .collect()
    };
    let mut best: Option<(BigUint, Vec<Partition>)> = None;
    for (value, witnesses) in pieces.into_iter().flatten() {
        match &mut best {
            None => best = Some((value, witnesses)),
            Some((bv, bw)) => {
                let better = match direction {
                    Direction::Max => value > *bv,
                    Direction::Min => value < *bv,
                };
                if better {
                    *bv = value;
                    *bw = witnesses;
                } else if value == *bv {
                    bw.extend(witnesses);
                }
            }
        }
    }
    let (value, witnesses) = best.ok_or_else(|| Error::EmptyClass {
        n,
        class: class.name(),
    })?;
    Ok(ExtremalResult {
        value,
        witnesses,
        source: Source::BruteForce,
        agreement: None,
        formula_value: None,
        known_issue: None,
    })
}

/// Minimum size of a partition with a given norm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinSizeResult {
    pub size: u64,
    /// One witness per admissible `beta`, in increasing `beta`.
    pub witnesses: Vec<Partition>,
    /// Admissible numbers of 4s: `0..=alpha_2 / 2` where `alpha_2` is the
    /// exponent of 2 in the norm.
    pub beta_range: Vec<u64>,
}

/// Minimum size of a partition of norm `nu`: the sum of the prime factors
/// with multiplicity. Attained exactly by the prime-factor partition with any
/// number `beta` of pairs of 2s merged into 4s.
pub fn min_size_for_norm(nu: u64) -> Result<MinSizeResult> {
    if nu == 0 {
        return Err(Error::Domain("norm must be at least 1".into()));
    }
    let factors = factorize(nu);
    let size = factors.iter().map(|&(p, e)| p * e as u64).sum();
    let twos = factors
        .iter()
        .find(|&&(p, _)| p == 2)
        .map_or(0, |&(_, e)| e as u64);
    let beta_range: Vec<u64> = (0..=twos / 2).collect();
    let witnesses = beta_range
        .iter()
        .map(|&beta| {
            let mut freq: Vec<(u64, u64)> = factors
                .iter()
                .filter(|&&(p, _)| p != 2)
                .map(|&(p, e)| (p, e as u64))
                .collect();
            freq.push((2, twos - 2 * beta));
            freq.push((4, beta));
            Partition::from_frequencies(freq).expect("positive parts")
        })
        .collect();
    Ok(MinSizeResult {
        size,
        witnesses,
        beta_range,
    })
}

/// `1 / (N(l) prod m_i!)`, the probability of `l` under the MacMahon
/// distribution.
pub fn macmahon_coeff(lam: &Partition) -> BigRational {
    macmahon_weight(lam)
}

/// `sum_{l |- n} macmahon_coeff(l) m_i(l)` by enumeration.
pub fn macmahon_expected_multiplicity(n: u64, i: u64, limits: &Limits) -> Result<BigRational> {
    if i == 0 || i > n {
        return Err(Error::Domain(format!(
            "need 1 <= i <= n, got i = {i}, n = {n}"
        )));
    }
    limits.check_enumeration(n)?;
    Ok(enumerate(n, &PartitionClass::All)
        .filter(|lam| lam.multiplicity(i) > 0)
        .map(|lam| macmahon_weight(&lam) * BigRational::from_integer(lam.multiplicity(i).into()))
        .sum())
}

/// Draws partitions of `n` from the MacMahon distribution as cycle types of
/// uniform random permutations; the permutations of cycle type `l` number
/// `n! / (N(l) prod m_i!)`.
#[derive(Debug, Clone)]
pub struct MacMahonSampler {
    perm: Vec<usize>,
    seen: Vec<bool>,
    rng: ChaCha8Rng,
}

impl MacMahonSampler {
    pub fn new(n: u64, seed: u64) -> Self {
        Self {
            perm: (0..n as usize).collect(),
            seen: vec![false; n as usize],
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn sample(&mut self) -> Partition {
        self.perm.shuffle(&mut self.rng);
        self.seen.iter_mut().for_each(|s| *s = false);
        let mut cycles = Vec::new();
        for start in 0..self.perm.len() {
            if self.seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut at = start;
            while !self.seen[at] {
                self.seen[at] = true;
                at = self.perm[at];
                len += 1;
            }
            cycles.push((len, 1));
        }
        Partition::from_frequencies(cycles).expect("cycle lengths are positive")
    }
}

/// One MacMahon-distributed partition of `n`, reproducible from `seed`.
pub fn sample_macmahon(n: u64, seed: u64) -> Partition {
    MacMahonSampler::new(n, seed).sample()
}

/// Dotted Young diagrams of shape `l` (one dot per row): `N(l)`.
pub fn dotted_count(lam: &Partition) -> BigUint {
    lam.norm()
}

/// `k` dots per row: `prod binom(i, k)^{m_i}`, zero when some part is below `k`.
pub fn k_dotted_count(lam: &Partition, k: u64) -> BigUint {
    lam.frequencies()
        .iter()
        .fold(BigUint::one(), |acc, &(part, mult)| {
            acc * binomial(part, k).pow(mult as u32)
        })
}

/// Multicolor dotted Young diagrams: `N(l) prod m_i!`.
pub fn multicolor_count(lam: &Partition) -> BigUint {
    macmahon_denominator(lam)
}

fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// `sum_{l |- n} 1/N(l)`, the `q^n` coefficient of `prod 1/(1 - q^m/m)`.
pub fn lehmer_sum(n: u64) -> BigRational {
    ReciprocalNormTable::new(n as usize, false).coefficient(n as usize)
}

/// `sum 1/N(l)` over partitions of `n` into distinct parts, the `q^n`
/// coefficient of `prod (1 + q^m/m)`.
pub fn lehmer_sum_distinct(n: u64) -> BigRational {
    ReciprocalNormTable::new(n as usize, true).coefficient(n as usize)
}

/// Double-precision `lehmer_sum(n)` and `lehmer_sum_distinct(n)` without
/// reducing the exact fractions.
pub fn lehmer_sums_f64(n: u64) -> (f64, f64) {
    let (full, distinct) = rayon::join(
        || ReciprocalNormTable::new(n as usize, false),
        || ReciprocalNormTable::new(n as usize, true),
    );
    (
        full.coefficient_f64(n as usize),
        distinct.coefficient_f64(n as usize),
    )
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpectedNorm {
    /// `prod_{i=1}^n i^(1/i)`.
    pub value: f64,
    /// `sum_{i=1}^n ln(i) / i`, the logarithm of `value`.
    pub log_sum: f64,
}

pub fn expected_norm(n: u64) -> Result<ExpectedNorm> {
    if n == 0 {
        return Err(Error::Domain("expected norm needs n >= 1".into()));
    }
    let log_sum: f64 = (2..=n).map(|i| (i as f64).ln() / i as f64).sum();
    Ok(ExpectedNorm {
        value: log_sum.exp(),
        log_sum,
    })
}

/// `m_i` counts for a batch of samples, used by the sampler tests and CLI.
pub fn mean_multiplicity(samples: &[Partition], part: u64) -> f64 {
    let total: u64 = samples.iter().map(|l| l.multiplicity(part)).sum();
    total.to_f64().unwrap_or(f64::NAN) / samples.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[i64]) -> Partition {
        Partition::from_parts(parts).unwrap()
    }

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn witness_strings(r: &ExtremalResult) -> Vec<String> {
        r.witnesses.iter().map(|w| w.to_string()).collect()
    }

    #[test]
    fn max_norm_examples() {
        let r = max_norm(10);
        assert_eq!(r.value, big(36));
        assert_eq!(witness_strings(&r), ["(4,3,3)", "(3,3,2,2)"]);
        let oracle = brute_extremal_norm(10, &PartitionClass::All, Direction::Max).unwrap();
        assert_eq!(oracle.witnesses.len(), 2);
        assert_eq!(r.clone().cross_check(&oracle).agreement, Some(true));

        assert_eq!(witness_strings(&max_norm(1)), ["(1)"]);
        assert_eq!(max_norm(1).value, big(1));
        assert_eq!(witness_strings(&max_norm(6)), ["(3,3)"]);
        assert_eq!(max_norm(6).value, big(9));
        assert_eq!(max_norm(0).witnesses, vec![Partition::empty()]);
    }

    #[test]
    fn max_norm_odd_examples() {
        assert_eq!(witness_strings(&max_norm_odd(8)), ["(5,3)"]);
        assert_eq!(max_norm_odd(8).value, big(15));
        assert_eq!(max_norm_odd(9).value, big(27));
        let two = max_norm_odd(2);
        assert_eq!(witness_strings(&two), ["(1,1)"]);
        assert_eq!(two.source, Source::BruteForce);
    }

    #[test]
    fn max_norm_distinct_examples() {
        let seven = max_norm_distinct(7);
        assert_eq!(triangular_decomposition(7), Some((3, 1)));
        assert_eq!(witness_strings(&seven), ["(4,3)"]);
        assert_eq!(seven.value, big(12));
        assert_eq!(seven.formula_value, Some(big(12)));

        let two = max_norm_distinct(2);
        assert_eq!(triangular_decomposition(2), Some((2, -1)));
        assert_eq!(witness_strings(&two), ["(2)"]);

        let eight = max_norm_distinct(8);
        assert_eq!(triangular_decomposition(8), None);
        assert_eq!(witness_strings(&eight), ["(5,3)"]);
        assert_eq!(eight.value, big(15));
        assert_eq!(eight.source, Source::BruteForce);
        assert_eq!(
            eight.known_issue,
            Some(KnownIssue::DistinctDecompositionGap)
        );
    }

    #[test]
    fn decomposition_gaps_are_triangular_minus_two() {
        let gaps: Vec<u64> = (2..60)
            .filter(|&n| triangular_decomposition(n).is_none())
            .collect();
        let expected: Vec<u64> = (3..12u64)
            .map(|k| k * (k + 1) / 2 - 2)
            .filter(|&n| n < 60)
            .collect();
        assert_eq!(gaps, expected);
    }

    #[test]
    fn max_norm_rr_examples() {
        let six = max_norm_rr(6);
        assert_eq!(witness_strings(&six), ["(4,2)"]);
        assert_eq!(six.value, big(8));
        assert_eq!(six.formula_value, Some(big(8)));

        let seven = max_norm_rr(7);
        assert_eq!(witness_strings(&seven), ["(5,2)"]);
        assert_eq!(seven.value, big(10));
        assert_eq!(seven.formula_value, Some(big(10)));

        let nine = max_norm_rr(9);
        assert_eq!(rr_decomposition(9), Some((2, 3, RrCase::RaiseOdd(1))));
        assert_eq!(witness_strings(&nine), ["(6,3)"]);
        assert_eq!(nine.value, big(18));
        assert_eq!(nine.formula_value, Some(big(18)));
    }

    #[test]
    fn rr_case_five_formula_is_flagged() {
        // k = 2, j = 4: witness (6,4) has norm 24; the formula gives 48
        let ten = max_norm_rr(10);
        assert_eq!(rr_decomposition(10), Some((2, 4, RrCase::ShiftedEven)));
        assert_eq!(witness_strings(&ten), ["(6,4)"]);
        assert_eq!(ten.value, big(24));
        assert_eq!(ten.formula_value, Some(big(48)));
        assert_eq!(
            ten.known_issue,
            Some(KnownIssue::RogersRamanujanCaseFiveFormula)
        );
        let oracle =
            brute_extremal_norm(10, &PartitionClass::RogersRamanujan, Direction::Max).unwrap();
        assert_eq!(oracle.value, big(24));
    }

    #[test]
    fn brute_force_examples() {
        let r = brute_extremal_norm(10, &PartitionClass::All, Direction::Max).unwrap();
        assert_eq!((r.value.clone(), r.witnesses.len()), (big(36), 2));
        for n in 1..=12 {
            let min = brute_extremal_norm(n, &PartitionClass::All, Direction::Min).unwrap();
            assert_eq!(min.value, big(1));
            assert!(min
                .witnesses
                .contains(&Partition::from_frequencies([(1, n)]).unwrap()));
        }
        for n in 3..=30 {
            let min = brute_extremal_norm(n, &PartitionClass::Distinct, Direction::Min).unwrap();
            assert_eq!(min.value, big(n - 1));
            assert_eq!(min.witnesses, vec![p(&[n as i64 - 1, 1])]);
        }
        assert!(matches!(
            brute_extremal_norm(5, &PartitionClass::EvenParts, Direction::Max),
            Err(Error::EmptyClass { n: 5, .. })
        ));
    }

    #[test]
    fn parallel_split_is_deterministic() {
        for n in [24u64, 30, 35] {
            let split = brute_extremal_norm(n, &PartitionClass::All, Direction::Min).unwrap();
            let mut best = split.value.clone();
            let mut serial = Vec::new();
            for lam in enumerate(n, &PartitionClass::All) {
                let v = lam.norm();
                if v < best {
                    best = v.clone();
                    serial.clear();
                }
                if v == best {
                    serial.push(lam);
                }
            }
            assert_eq!(split.witnesses, serial);
        }
    }

    #[test]
    fn min_size_examples() {
        let twelve = min_size_for_norm(12).unwrap();
        assert_eq!(twelve.size, 7);
        let ws: Vec<String> = twelve
            .witnesses
            .iter()
            .map(|w| w.frequency_notation())
            .collect();
        assert_eq!(ws, ["<2^2 3>", "<3 4>"]);
        assert_eq!(twelve.beta_range, vec![0, 1]);

        let one = min_size_for_norm(1).unwrap();
        assert_eq!(
            (one.size, one.witnesses.clone()),
            (0, vec![Partition::empty()])
        );
        let seven = min_size_for_norm(7).unwrap();
        assert_eq!((seven.size, seven.witnesses.clone()), (7, vec![p(&[7])]));
        assert!(min_size_for_norm(0).is_err());
    }

    #[test]
    fn macmahon_examples() {
        assert_eq!(macmahon_coeff(&p(&[2, 1])), rat(1, 2));
        assert_eq!(macmahon_coeff(&p(&[1, 1])), rat(1, 2));
        assert_eq!(macmahon_coeff(&Partition::empty()), rat(1, 1));
        let limits = Limits::default();
        assert_eq!(
            macmahon_expected_multiplicity(2, 1, &limits).unwrap(),
            rat(1, 1)
        );
        assert_eq!(
            macmahon_expected_multiplicity(2, 2, &limits).unwrap(),
            rat(1, 2)
        );
        assert_eq!(
            macmahon_expected_multiplicity(5, 3, &limits).unwrap(),
            rat(1, 3)
        );
        assert!(macmahon_expected_multiplicity(5, 6, &limits).is_err());
        assert!(macmahon_expected_multiplicity(5, 0, &limits).is_err());
    }

    #[test]
    fn expected_multiplicity_is_reciprocal() {
        let limits = Limits::default();
        for n in 1..=14 {
            for i in 1..=n {
                assert_eq!(
                    macmahon_expected_multiplicity(n, i, &limits).unwrap(),
                    rat(1, i as i64)
                );
            }
        }
    }

    #[test]
    fn sampler_small_cases() {
        for seed in 0..20 {
            assert_eq!(sample_macmahon(1, seed), p(&[1]));
        }
        let mut sampler = MacMahonSampler::new(2, 7);
        let ones = (0..20_000)
            .filter(|_| sampler.sample() == p(&[1, 1]))
            .count();
        // Pr = 1/2; five standard errors is about 350
        assert!((ones as i64 - 10_000).abs() < 350, "{ones}");
        assert_eq!(sample_macmahon(9, 42), sample_macmahon(9, 42));
    }

    #[test]
    fn sampler_mean_of_fixed_points() {
        let mut sampler = MacMahonSampler::new(20, 2024);
        let samples: Vec<Partition> = (0..100_000).map(|_| sampler.sample()).collect();
        assert!(samples.iter().all(|s| s.size() == 20));
        // m_1 is the fixed-point count: mean 1, variance 1
        let mean = mean_multiplicity(&samples, 1);
        let se = (1.0f64 / samples.len() as f64).sqrt();
        assert!((mean - 1.0).abs() < 3.0 * se, "mean {mean}");
    }

    #[test]
    fn dotted_counts() {
        let lam = p(&[4, 3, 3, 1]);
        assert_eq!(dotted_count(&lam), big(36));
        assert_eq!(k_dotted_count(&lam, 2), big(0));
        assert_eq!(k_dotted_count(&p(&[4, 3, 3]), 2), big(54));
        assert_eq!(k_dotted_count(&lam, 1), big(36));
        assert_eq!(multicolor_count(&p(&[5, 5, 3, 3, 3, 1])), big(8100));
        assert_eq!(k_dotted_count(&Partition::empty(), 3), big(1));
    }

    #[test]
    fn lehmer_examples() {
        assert_eq!(lehmer_sum(3), rat(11, 6));
        assert_eq!(lehmer_sum_distinct(3), rat(5, 6));
        assert_eq!(lehmer_sum(0), rat(1, 1));
        assert_eq!(lehmer_sum_distinct(0), rat(1, 1));
    }

    #[test]
    fn lehmer_matches_enumeration() {
        for n in 0..=25u64 {
            let brute: BigRational = enumerate(n, &PartitionClass::All)
                .map(|l| BigRational::new(BigInt::one(), BigInt::from(l.norm())))
                .sum();
            assert_eq!(lehmer_sum(n), brute, "n = {n}");
            let brute_d: BigRational = enumerate(n, &PartitionClass::Distinct)
                .map(|l| BigRational::new(BigInt::one(), BigInt::from(l.norm())))
                .sum();
            assert_eq!(lehmer_sum_distinct(n), brute_d, "n = {n}");
        }
    }

    #[test]
    fn expected_norm_examples() {
        assert_eq!(expected_norm(1).unwrap().value, 1.0);
        assert!((expected_norm(2).unwrap().value - 2f64.sqrt()).abs() < 1e-12);
        let three = 2f64.sqrt() * 3f64.cbrt();
        assert!((expected_norm(3).unwrap().value - three).abs() < 1e-12);
        assert!((three - 2.039649).abs() < 1e-6);
        assert!(expected_norm(0).is_err());
    }
}
