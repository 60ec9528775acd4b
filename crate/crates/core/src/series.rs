//! Truncated formal power series with exact rational coefficients, and the
//! generating-function identities built on them.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::partitions::{enumerate, sigma, Partition, PartitionClass};
use crate::report::VerifyReport;

/// A power series `c_0 + c_1 q + ... + c_order q^order`. Binary operations
/// between series of different orders truncate to the smaller order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<BigRational>,
}

impl Series {
    /// `coeffs` must be nonempty; its length is `order + 1`.
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty(), "a series has at least a constant term");
        Self { coeffs }
    }

    pub fn from_integers(order: usize, ints: &[i64]) -> Self {
        let mut coeffs = vec![BigRational::zero(); order + 1];
        for (c, &v) in coeffs.iter_mut().zip(ints) {
            *c = BigRational::from_integer(v.into());
        }
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = BigRational::one();
        s
    }

    /// `coeff * q^exponent`, truncated to `order`.
    pub fn monomial(order: usize, exponent: usize, coeff: BigRational) -> Self {
        let mut s = Self::zero(order);
        if exponent <= order {
            s.coeffs[exponent] = coeff;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `q^i`; zero beyond the order.
    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigRational> {
        self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Series {
        let mut coeffs: Vec<BigRational> = self.coeffs.iter().take(order + 1).cloned().collect();
        coeffs.resize(order + 1, BigRational::zero());
        Series { coeffs }
    }

    pub fn scale(&self, factor: &BigRational) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn reciprocal(&self) -> Result<Series> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let inv0 = a0.recip();
        let order = self.order();
        let mut out: Vec<BigRational> = Vec::with_capacity(order + 1);
        out.push(inv0.clone());
        for n in 1..=order {
            let mut acc = BigRational::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * &out[n - k];
                }
            }
            out.push(-(acc * &inv0));
        }
        Ok(Series { coeffs: out })
    }

    /// Integer power; negative exponents go through [`Series::reciprocal`].
    pub fn pow(&self, e: i64) -> Result<Series> {
        let base = if e < 0 {
            self.reciprocal()?
        } else {
            self.clone()
        };
        let mut k = e.unsigned_abs();
        let mut result = Series::one(self.order());
        let mut square = base;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &square;
            }
            k >>= 1;
            if k > 0 {
                square = &square * &square;
            }
        }
        Ok(result)
    }

    /// `self^r` for rational `r`, for series with constant term one. Uses the
    /// recurrence `n b_n = sum_{k=1}^n ((r + 1) k - n) a_k b_{n-k}`.
    pub fn pow_rational(&self, r: &BigRational) -> Result<Series> {
        if !self.coeffs[0].is_one() {
            return Err(Error::NonUnitConstantTerm);
        }
        let order = self.order();
        let r1 = r + BigRational::one();
        let mut out: Vec<BigRational> = Vec::with_capacity(order + 1);
        out.push(BigRational::one());
        for n in 1..=order {
            let mut acc = BigRational::zero();
            for k in 1..=n {
                if self.coeffs[k].is_zero() {
                    continue;
                }
                let w =
                    &r1 * BigRational::from_integer(k.into()) - BigRational::from_integer(n.into());
                acc += w * &self.coeffs[k] * &out[n - k];
            }
            out.push(acc / BigRational::from_integer(n.into()));
        }
        Ok(Series { coeffs: out })
    }

    /// Multiplies in place by `1 / (1 - w q^m)`.
    fn mul_geometric(&mut self, m: usize, w: &BigRational) {
        if m == 0 || w.is_zero() {
            return;
        }
        for i in m..self.coeffs.len() {
            if !self.coeffs[i - m].is_zero() {
                let term = &self.coeffs[i - m] * w;
                self.coeffs[i] += term;
            }
        }
    }

    /// Multiplies in place by `1 + w q^m`.
    fn mul_binomial(&mut self, m: usize, w: &BigRational) {
        if m == 0 || w.is_zero() {
            return;
        }
        for i in (m..self.coeffs.len()).rev() {
            if !self.coeffs[i - m].is_zero() {
                let term = &self.coeffs[i - m] * w;
                self.coeffs[i] += term;
            }
        }
    }
}

impl Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        let order = self.order().min(rhs.order());
        Series {
            coeffs: (0..=order)
                .map(|i| &self.coeffs[i] + &rhs.coeffs[i])
                .collect(),
        }
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        let order = self.order().min(rhs.order());
        Series {
            coeffs: (0..=order)
                .map(|i| &self.coeffs[i] - &rhs.coeffs[i])
                .collect(),
        }
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        let order = self.order().min(rhs.order());
        let mut coeffs = vec![BigRational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().take(order + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(order + 1 - i).enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Series { coeffs }
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for Series {
            type Output = Series;
            fn $method(self, rhs: Series) -> Series {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

fn int(v: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(v.into())
}

/// `prod_{n=1}^{order} 1/(1 - q^n)` up to `q^order`; the coefficients are p(n).
pub fn euler_partition_series(order: usize) -> Series {
    weighted_partition_series(order, |_| BigRational::one())
}

/// p(n) by Euler's pentagonal-number recurrence.
pub fn pentagonal_p(n: u64) -> BigUint {
    pentagonal_table(n as usize).pop().unwrap()
}

/// p(0), ..., p(n) by the pentagonal-number recurrence.
pub fn pentagonal_table(n: usize) -> Vec<BigUint> {
    let mut p: Vec<BigInt> = Vec::with_capacity(n + 1);
    p.push(BigInt::one());
    for m in 1..=n {
        let mut acc = BigInt::zero();
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > m {
                break;
            }
            let g2 = k * (3 * k + 1) / 2;
            let mut term = p[m - g1].clone();
            if g2 <= m {
                term += &p[m - g2];
            }
            if k % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        p.push(acc);
    }
    p.into_iter()
        .map(|v| v.to_biguint().expect("p(n) is positive"))
        .collect()
}

/// `prod_{n=1}^{order} 1/(1 - w(n) q^n)`.
///
/// With `w(n) = n` the coefficients count dotted Young diagrams; with
/// `w(n) = 1/n` they are the sums of reciprocal norms.
pub fn weighted_partition_series<W>(order: usize, w: W) -> Series
where
    W: Fn(u64) -> BigRational,
{
    let mut s = Series::one(order);
    for m in 1..=order {
        s.mul_geometric(m, &w(m as u64));
    }
    s
}

/// `prod_{n=1}^{order} (1 + w(n) q^n)`, the distinct-parts analogue.
pub fn weighted_distinct_series<W>(order: usize, w: W) -> Series
where
    W: Fn(u64) -> BigRational,
{
    let mut s = Series::one(order);
    for m in 1..=order {
        s.mul_binomial(m, &w(m as u64));
    }
    s
}

/// Coefficients of `prod 1/(1 - q^m/m)` (or `prod (1 + q^m/m)` when
/// `distinct`), held over the common denominator `order!`.
///
/// Every partition of `i <= order` has a norm dividing `i!`, so each scaled
/// coefficient is an integer and each update `c_i += c_{i-m} / m` divides
/// exactly. This keeps the inner loop free of gcd reductions, which is what
/// makes orders in the thousands practical.
#[derive(Debug, Clone)]
pub struct ReciprocalNormTable {
    scale: BigUint,
    numerators: Vec<BigUint>,
}

impl ReciprocalNormTable {
    pub fn new(order: usize, distinct: bool) -> Self {
        let scale: BigUint = (1..=order as u64).fold(BigUint::one(), |acc, k| acc * k);
        let mut c = vec![BigUint::zero(); order + 1];
        c[0] = scale.clone();
        for m in 1..=order {
            let md = m as u64;
            if distinct {
                for i in (m..=order).rev() {
                    if !c[i - m].is_zero() {
                        let add = &c[i - m] / md;
                        c[i] += add;
                    }
                }
            } else {
                for i in m..=order {
                    if !c[i - m].is_zero() {
                        let add = &c[i - m] / md;
                        c[i] += add;
                    }
                }
            }
        }
        Self {
            scale,
            numerators: c,
        }
    }

    pub fn order(&self) -> usize {
        self.numerators.len() - 1
    }

    pub fn coefficient(&self, i: usize) -> BigRational {
        BigRational::new(
            BigInt::from(self.numerators[i].clone()),
            BigInt::from(self.scale.clone()),
        )
    }

    /// Floating-point value of coefficient `i`, without reducing the fraction.
    pub fn coefficient_f64(&self, i: usize) -> f64 {
        ratio_to_f64(&self.numerators[i], &self.scale)
    }
}

/// `num / den` as a double for arbitrarily large operands.
pub(crate) fn ratio_to_f64(num: &BigUint, den: &BigUint) -> f64 {
    if num.is_zero() {
        return 0.0;
    }
    let shift_num = num.bits().saturating_sub(64);
    let shift_den = den.bits().saturating_sub(64);
    let n = (num >> shift_num)
        .to_u64_digits()
        .first()
        .copied()
        .unwrap_or(0) as f64;
    let d = (den >> shift_den)
        .to_u64_digits()
        .first()
        .copied()
        .unwrap_or(0) as f64;
    (n / d) * 2f64.powi(shift_num as i32 - shift_den as i32)
}

/// Exact rational to double; handles operands far beyond f64 range.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    let sign = if r.is_negative() { -1.0 } else { 1.0 };
    let num = r.numer().abs().to_biguint().unwrap();
    let den = r.denom().abs().to_biguint().unwrap();
    sign * ratio_to_f64(&num, &den)
}

/// Sign choice in `prod (1 - q^n)^(-c)` (`Plus`) versus `prod (1 - q^n)^c`
/// (`Minus`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn apply(self, c: &BigRational) -> BigRational {
        match self {
            Sign::Plus => c.clone(),
            Sign::Minus => -c,
        }
    }
}

/// Right-hand side of the sigma-power expansion
/// `prod (1 - q^n)^(-/+c) = sum_n q^n sum_{l |- n} (+/-c)^len prod sigma(i)^{m_i} / (N(l) prod m_i!)`,
/// summed over enumerated partitions.
pub fn sigma_power_expansion(
    c: &BigRational,
    sign: Sign,
    order: usize,
    limits: &Limits,
) -> Result<Series> {
    limits.check_enumeration(order as u64)?;
    let signed_c = sign.apply(c);
    let mut coeffs = Vec::with_capacity(order + 1);
    for n in 0..=order as u64 {
        let mut acc = BigRational::zero();
        for lam in enumerate(n, &PartitionClass::All) {
            let mut term = macmahon_weight(&lam);
            term *= pow_rat(&signed_c, lam.length());
            for &(part, mult) in lam.frequencies() {
                term *= pow_rat(&int(sigma(part)), mult);
            }
            acc += term;
        }
        coeffs.push(acc);
    }
    Ok(Series::new(coeffs))
}

/// `prod_{n=1}^{order} (1 - q^n)^(-c)` for `Plus`, `(1 - q^n)^c` for
/// `Minus`, multiplied out factor by factor from generalized binomial series.
pub fn euler_product_power(c: &BigRational, sign: Sign, order: usize) -> Series {
    let exponent = -sign.apply(c);
    let binom = generalized_binomials(&exponent, order);
    let mut acc = Series::one(order);
    for n in 1..=order {
        let mut next = vec![BigRational::zero(); order + 1];
        for (i, a) in acc.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in binom.iter().enumerate() {
                let idx = i + n * j;
                if idx > order {
                    break;
                }
                if b.is_zero() {
                    continue;
                }
                // (1 - q^n)^e = sum_j binom(e, j) (-1)^j q^{nj}
                let term = a * b;
                if j % 2 == 0 {
                    next[idx] += term;
                } else {
                    next[idx] -= term;
                }
            }
        }
        acc = Series::new(next);
    }
    acc
}

/// `binom(e, j)` for `j = 0..=count`.
fn generalized_binomials(e: &BigRational, count: usize) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(count + 1);
    let mut current = BigRational::one();
    out.push(current.clone());
    for j in 1..=count {
        current = current * (e - int(j as u64 - 1)) / int(j as u64);
        out.push(current.clone());
    }
    out
}

fn pow_rat(base: &BigRational, exp: u64) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// `N(l) * prod m_i!` for a partition.
pub(crate) fn macmahon_denominator(lam: &Partition) -> BigUint {
    lam.frequencies()
        .iter()
        .fold(lam.norm(), |acc, &(_, m)| acc * factorial(m))
}

/// `1 / (N(l) prod m_i!)`.
pub(crate) fn macmahon_weight(lam: &Partition) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(macmahon_denominator(lam)))
}

/// Checks `prod_{j=1}^n 1/(1-q^j) = sum_{l |- n} 1/(N(l) prod m_i! prod (1-q^i)^{m_i})`
/// exactly at a rational `q` with `0 < |q| < 1`.
pub fn macmahon_partial_fraction_check(
    n: u64,
    q: &BigRational,
    limits: &Limits,
) -> Result<VerifyReport> {
    if q.is_zero() || q.abs() >= BigRational::one() {
        return Err(Error::Domain(format!("need 0 < |q| < 1, got q = {q}")));
    }
    if n > limits.macmahon_max_n {
        return Err(Error::CeilingExceeded {
            n,
            count: format!("n = {n}"),
            ceiling: limits.macmahon_max_n,
        });
    }
    limits.check_enumeration(n)?;
    let one = BigRational::one();
    // 1 - q^i for i = 1..=n
    let mut q_pow = one.clone();
    let mut one_minus: Vec<BigRational> = vec![one.clone()];
    for _ in 1..=n {
        q_pow *= q;
        one_minus.push(&one - &q_pow);
    }
    let lhs = one_minus[1..].iter().fold(one.clone(), |acc, f| acc / f);
    let mut rhs = BigRational::zero();
    for lam in enumerate(n, &PartitionClass::All) {
        let mut den = BigRational::from_integer(BigInt::from(macmahon_denominator(&lam)));
        for &(part, mult) in lam.frequencies() {
            den *= pow_rat(&one_minus[part as usize], mult);
        }
        rhs += den.recip();
    }
    Ok(VerifyReport::exact(
        format!("macmahon-pf n={n} q={q}"),
        lhs,
        rhs,
    ))
}

/// Fine's identity: the MacMahon coefficients of the partitions of `n` sum
/// to one.
pub fn fine_identity_check(n: u64, limits: &Limits) -> Result<VerifyReport> {
    limits.check_enumeration(n)?;
    let total: BigRational = enumerate(n, &PartitionClass::All)
        .map(|lam| macmahon_weight(&lam))
        .sum();
    Ok(VerifyReport::exact(format!("fine n={n}"), total, 1))
}

/// `sum_{l |- n} N(l)`, read off `prod 1/(1 - n q^n)`.
pub fn p_dot(n: u64) -> BigUint {
    p_dot_table(n as usize).pop().unwrap()
}

/// `p_dot(0), ..., p_dot(order)`.
pub fn p_dot_table(order: usize) -> Vec<BigUint> {
    weighted_partition_series(order, int)
        .into_coeffs()
        .into_iter()
        .map(|c| {
            debug_assert!(c.is_integer());
            c.to_integer().to_biguint().expect("nonnegative")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn ring_examples() {
        let one_minus_q = Series::from_integers(3, &[1, -1]);
        assert_eq!(
            one_minus_q.reciprocal().unwrap(),
            Series::from_integers(3, &[1, 1, 1, 1])
        );
        let one_plus_q = Series::from_integers(3, &[1, 1]);
        assert_eq!(
            &one_plus_q * &one_minus_q,
            Series::from_integers(3, &[1, 0, -1])
        );
        assert_eq!(
            one_plus_q.pow(-1).unwrap(),
            Series::from_integers(3, &[1, -1, 1, -1])
        );
        assert_eq!(
            one_plus_q.pow(-1).unwrap(),
            one_plus_q.reciprocal().unwrap()
        );
        assert_eq!(
            Series::from_integers(3, &[0, 1]).reciprocal(),
            Err(Error::ZeroConstantTerm)
        );
        assert_eq!(
            one_plus_q.pow(2).unwrap(),
            Series::from_integers(3, &[1, 2, 1])
        );
    }

    #[test]
    fn mixed_orders_truncate() {
        let a = Series::from_integers(5, &[1, 1, 1, 1, 1, 1]);
        let b = Series::from_integers(2, &[1, 1, 1]);
        assert_eq!((&a + &b).order(), 2);
        assert_eq!(
            (&a * &b).coeffs(),
            Series::from_integers(2, &[1, 2, 3]).coeffs()
        );
    }

    #[test]
    fn pow_rational_square_root() {
        // (1 - 4q)^(1/2) = 1 - 2q - 2q^2 - 4q^3
        let s = Series::from_integers(3, &[1, -4]);
        let r = s.pow_rational(&rat(1, 2)).unwrap();
        assert_eq!(r, Series::from_integers(3, &[1, -2, -2, -4]));
        assert_eq!(&r * &r, s);
        assert_eq!(
            Series::from_integers(3, &[2, 1]).pow_rational(&rat(1, 2)),
            Err(Error::NonUnitConstantTerm)
        );
    }

    #[test]
    fn euler_series_examples() {
        let s = euler_partition_series(10);
        assert_eq!(s.coeff(0), int(1));
        assert_eq!(s.coeff(4), int(5));
        assert_eq!(s.coeff(10), int(42));
    }

    #[test]
    fn pentagonal_examples() {
        assert_eq!(pentagonal_p(0), BigUint::from(1u32));
        assert_eq!(pentagonal_p(10), BigUint::from(42u32));
        assert_eq!(pentagonal_p(50), BigUint::from(204226u32));
        let s = euler_partition_series(50);
        assert_eq!(s.coeff(50), int(204226));
    }

    #[test]
    fn euler_series_matches_pentagonal_recurrence() {
        let table = pentagonal_table(200);
        let s = euler_partition_series(200);
        for (n, p) in table.iter().enumerate() {
            assert_eq!(
                s.coeff(n),
                BigRational::from_integer(BigInt::from(p.clone())),
                "n = {n}"
            );
        }
    }

    #[test]
    fn enumeration_counts_match_pentagonal() {
        let table = pentagonal_table(60);
        for n in [0u64, 1, 5, 17, 30, 45, 60] {
            let count = enumerate(n, &PartitionClass::All).count();
            assert_eq!(BigUint::from(count), table[n as usize], "n = {n}");
        }
    }

    #[test]
    fn weighted_examples() {
        let dotted = weighted_partition_series(3, int);
        assert_eq!(dotted.coeff(3), int(6));
        assert_eq!(
            weighted_partition_series(12, |_| int(1)),
            euler_partition_series(12)
        );
        let recip = weighted_partition_series(3, |m| rat(1, m as i64));
        assert_eq!(recip.coeff(3), rat(11, 6));

        let d = weighted_distinct_series(3, |m| rat(1, m as i64));
        assert_eq!(d.coeff(3), rat(5, 6));
        assert_eq!(d.coeff(0), int(1));
        assert_eq!(weighted_distinct_series(3, |_| int(1)).coeff(3), int(2));
    }

    #[test]
    fn reciprocal_norm_table_matches_rational_products() {
        let full = weighted_partition_series(40, |m| rat(1, m as i64));
        let dist = weighted_distinct_series(40, |m| rat(1, m as i64));
        let t_full = ReciprocalNormTable::new(40, false);
        let t_dist = ReciprocalNormTable::new(40, true);
        for i in 0..=40 {
            assert_eq!(t_full.coefficient(i), full.coeff(i));
            assert_eq!(t_dist.coefficient(i), dist.coeff(i));
            let approx = t_full.coefficient_f64(i);
            assert!(
                (approx - rational_to_f64(&full.coeff(i))).abs() <= 1e-14 * approx.abs().max(1.0)
            );
        }
    }

    #[test]
    fn macmahon_partial_fraction_examples() {
        let limits = Limits::default();
        let r = macmahon_partial_fraction_check(2, &rat(1, 2), &limits).unwrap();
        assert!(r.passed());
        assert_eq!(r.lhs, "8/3");
        let r = macmahon_partial_fraction_check(1, &rat(1, 3), &limits).unwrap();
        assert_eq!((r.lhs.as_str(), r.rhs.as_str()), ("3/2", "3/2"));
        assert!(macmahon_partial_fraction_check(3, &rat(1, 2), &limits)
            .unwrap()
            .passed());
        assert!(macmahon_partial_fraction_check(3, &rat(1, 1), &limits).is_err());
        assert!(macmahon_partial_fraction_check(3, &rat(0, 1), &limits).is_err());
        assert!(matches!(
            macmahon_partial_fraction_check(26, &rat(1, 2), &limits),
            Err(Error::CeilingExceeded { .. })
        ));
    }

    #[test]
    fn fine_examples() {
        let limits = Limits::default();
        for n in [0, 3, 20] {
            let r = fine_identity_check(n, &limits).unwrap();
            assert!(r.passed(), "{r}");
            assert_eq!(r.lhs, "1");
        }
    }

    #[test]
    fn sigma_power_examples() {
        let limits = Limits::default();
        let plus = sigma_power_expansion(&int(1), Sign::Plus, 3, &limits).unwrap();
        assert_eq!(plus.coeff(3), int(3));
        let minus = sigma_power_expansion(&int(1), Sign::Minus, 3, &limits).unwrap();
        assert_eq!(minus.coeff(1), int(-1));
        let two = sigma_power_expansion(&int(2), Sign::Plus, 3, &limits).unwrap();
        assert_eq!(two.coeff(2), int(5));
    }

    #[test]
    fn sigma_power_matches_direct_products() {
        let limits = Limits::default();
        assert_eq!(
            sigma_power_expansion(&int(1), Sign::Plus, 30, &limits).unwrap(),
            euler_partition_series(30)
        );
        for c in [int(1), int(2), int(3), rat(1, 2)] {
            for sign in [Sign::Plus, Sign::Minus] {
                let lhs = sigma_power_expansion(&c, sign, 20, &limits).unwrap();
                let direct = euler_product_power(&c, sign, 20);
                assert_eq!(lhs, direct, "c = {c}, {sign:?}");
            }
        }
    }

    #[test]
    fn direct_product_agrees_with_power_of_euler_series() {
        let euler = euler_partition_series(15);
        assert_eq!(
            euler_product_power(&int(3), Sign::Plus, 15),
            euler.pow(3).unwrap()
        );
        assert_eq!(
            euler_product_power(&int(2), Sign::Minus, 15),
            euler.pow(-2).unwrap()
        );
        assert_eq!(
            euler_product_power(&rat(1, 2), Sign::Plus, 15),
            euler.pow_rational(&rat(1, 2)).unwrap()
        );
    }

    #[test]
    fn p_dot_examples() {
        assert_eq!(p_dot(0), BigUint::from(1u32));
        assert_eq!(p_dot(3), BigUint::from(6u32));
        assert_eq!(p_dot(4), BigUint::from(14u32));
        let table = p_dot_table(30);
        for n in 0..=30u64 {
            let brute: BigUint = enumerate(n, &PartitionClass::All).map(|l| l.norm()).sum();
            assert_eq!(table[n as usize], brute);
        }
    }

    #[test]
    fn rational_to_f64_handles_huge_operands() {
        let big = BigInt::from(10u32).pow(400);
        let r = BigRational::new(&big * 3, &big * 4);
        assert_eq!(rational_to_f64(&r), 0.75);
        assert_eq!(rational_to_f64(&rat(-1, 3)), -1.0 / 3.0);
    }

    fn small_series(order: usize) -> impl Strategy<Value = Series> {
        proptest::collection::vec((-5i64..=5, 1i64..=4), order + 1)
            .prop_map(|v| Series::new(v.into_iter().map(|(n, d)| rat(n, d)).collect()))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn ring_laws(a in small_series(6), b in small_series(6), c in small_series(6)) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
            if !a.coeff(0).is_zero() {
                prop_assert_eq!(&a * &a.reciprocal().unwrap(), Series::one(6));
            }
        }
    }
}
