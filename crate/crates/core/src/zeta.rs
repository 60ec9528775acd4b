//! Partition zeta functions.
//!
//! Floating-point paths report a rigorous truncation bound alongside the
//! value. Even-argument values are also available exactly, as a rational
//! multiple of a power of pi ([`PiValue`]). Every family is computed along
//! two independent routes so the harness can cross-check them.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::RwLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::partitions::{divisors, enumerate, subpartitions, Partition, PartitionClass};
use crate::report::VerifyReport;
use crate::series::{macmahon_weight, rational_to_f64};

/// Largest truncation point the Euler-product evaluators will walk to.
const MAX_TRUNCATION: u64 = 1 << 32;

/// Result of a floating-point evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvalResult {
    pub value: f64,
    /// Bound on `|true value - value|` from truncation, or `None` when no
    /// rigorous bound is available.
    pub tail_bound: Option<f64>,
    pub terms_used: u64,
}

/// An exact value `coeff * pi^power`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiValue {
    pub coeff: BigRational,
    pub power: u32,
}

impl PiValue {
    pub fn new(coeff: BigRational, power: u32) -> Self {
        Self { coeff, power }
    }

    pub fn rational(coeff: BigRational) -> Self {
        Self { coeff, power: 0 }
    }

    pub fn zero(power: u32) -> Self {
        Self::new(BigRational::zero(), power)
    }

    /// Sum of two values with the same power of pi; zero adopts the other
    /// operand's power.
    pub fn checked_add(&self, other: &PiValue) -> Result<PiValue> {
        if self.coeff.is_zero() {
            return Ok(other.clone());
        }
        if other.coeff.is_zero() {
            return Ok(self.clone());
        }
        if self.power != other.power {
            return Err(Error::PiPowerMismatch(self.power, other.power));
        }
        Ok(PiValue::new(&self.coeff + &other.coeff, self.power))
    }

    pub fn scale(&self, factor: &BigRational) -> PiValue {
        PiValue::new(&self.coeff * factor, self.power)
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.coeff) * std::f64::consts::PI.powi(self.power as i32)
    }
}

impl std::ops::Mul for &PiValue {
    type Output = PiValue;
    fn mul(self, rhs: &PiValue) -> PiValue {
        PiValue::new(&self.coeff * &rhs.coeff, self.power + rhs.power)
    }
}

impl fmt::Display for PiValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.power == 0 {
            write!(f, "{}", self.coeff)
        } else {
            write!(f, "{} * pi^{}", self.coeff, self.power)
        }
    }
}

impl Serialize for PiValue {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("PiValue", 2)?;
        st.serialize_field("coeff", &self.coeff.to_string())?;
        st.serialize_field("power", &self.power)?;
        st.end()
    }
}

static BERNOULLI: RwLock<Vec<BigRational>> = RwLock::new(Vec::new());

/// Bernoulli number `B_n` (with `B_1 = -1/2`), from the recurrence
/// `sum_{k=0}^{m} binom(m+1, k) B_k = 0`. Values are cached.
pub fn bernoulli(n: usize) -> BigRational {
    if let Some(b) = BERNOULLI.read().unwrap().get(n) {
        return b.clone();
    }
    let mut table = BERNOULLI.write().unwrap();
    if table.is_empty() {
        table.push(BigRational::one());
    }
    while table.len() <= n {
        let m = table.len();
        // binom(m+1, k) for k = 0..m
        let mut binom = BigInt::one();
        let mut acc = BigRational::zero();
        for (k, b) in table.iter().enumerate() {
            acc += b * BigRational::from_integer(binom.clone());
            binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
        }
        table.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
    }
    table[n].clone()
}

fn factorial_int(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, v| acc * v)
}

/// `zeta(2j) = (-1)^(j+1) B_2j (2 pi)^(2j) / (2 (2j)!)` as an exact multiple
/// of `pi^(2j)`.
pub fn riemann_zeta_even_exact(j: u32) -> Result<PiValue> {
    if j == 0 {
        return Err(Error::Domain("zeta(2j) needs j >= 1".into()));
    }
    let two_j = 2 * j as u64;
    let b = bernoulli(two_j as usize);
    let pow2 = BigRational::from_integer(BigInt::from(2).pow(2 * j));
    let denom = BigRational::from_integer(factorial_int(two_j) * 2);
    let mut coeff = b * pow2 / denom;
    if j.is_multiple_of(2) {
        coeff = -coeff;
    }
    Ok(PiValue::new(coeff, 2 * j))
}

fn require_s_above(s: f64, bound: f64) -> Result<()> {
    if !s.is_finite() || s <= bound {
        return Err(Error::Domain(format!("need s > {bound}, got s = {s}")));
    }
    Ok(())
}

fn require_tol(tol: f64) -> Result<()> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::Domain(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    Ok(())
}

/// Neumaier-compensated sum.
#[derive(Debug, Clone, Copy, Default)]
struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Riemann zeta for real `s > 1` by Euler–Maclaurin summation. The reported
/// bound is the magnitude of the first omitted correction term, which bounds
/// the remainder for real `s`.
pub fn riemann_zeta(s: f64, tol: f64) -> Result<EvalResult> {
    require_s_above(s, 1.0)?;
    require_tol(tol)?;
    let mut n_head: u64 = 16;
    loop {
        let nf = n_head as f64;
        let mut head = CompensatedSum::default();
        for n in (1..n_head).rev() {
            head.add((n as f64).powf(-s));
        }
        head.add(nf.powf(1.0 - s) / (s - 1.0));
        head.add(nf.powf(-s) / 2.0);
        // term_k = B_2k / (2k)! * s (s+1) ... (s+2k-2) * N^(-s-2k+1)
        let mut rising = s;
        let mut fact = 2.0f64;
        let mut last = f64::INFINITY;
        let mut k = 1usize;
        let bound = loop {
            let b = bernoulli(2 * k).to_f64().unwrap_or(f64::NAN);
            let term = b / fact * rising * nf.powf(-s - 2.0 * k as f64 + 1.0);
            if term.abs() <= tol / 2.0 {
                break Some(term.abs());
            }
            if term.abs() >= last || k > 60 {
                break None;
            }
            head.add(term);
            last = term.abs();
            rising *= (s + 2.0 * k as f64 - 1.0) * (s + 2.0 * k as f64);
            fact *= (2 * k + 1) as f64 * (2 * k + 2) as f64;
            k += 1;
        };
        match bound {
            Some(b) => {
                return Ok(EvalResult {
                    value: head.value(),
                    tail_bound: Some(b),
                    terms_used: n_head + k as u64,
                })
            }
            None if n_head < 1 << 20 => n_head *= 4,
            None => {
                return Err(Error::Domain(format!(
                    "tolerance {tol} unreachable for s = {s}"
                )))
            }
        }
    }
}

/// A set of allowed parts for an Euler product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PartSetSpec {
    Primes,
    EvenIntegers,
    /// All integers `>= b`, `b >= 2`.
    IntegersFrom(u64),
    ExplicitList(BTreeSet<u64>),
    /// Every positive integer; only valid in the distinct-parts product.
    AllIntegersFrom1,
}

impl PartSetSpec {
    /// Rejects sets containing 1 (or 0), for which the Euler product has a
    /// pole.
    pub fn validate_for_euler_product(&self) -> Result<()> {
        match self {
            PartSetSpec::IntegersFrom(b) if *b < 2 => Err(Error::Domain(format!(
                "part set must exclude 1, got integers from {b}"
            ))),
            PartSetSpec::ExplicitList(set) if set.contains(&0) || set.contains(&1) => {
                Err(Error::Domain("part set must exclude 0 and 1".into()))
            }
            PartSetSpec::AllIntegersFrom1 => Err(Error::Domain(
                "part set must exclude 1; all integers are only allowed in the distinct product"
                    .into(),
            )),
            _ => Ok(()),
        }
    }

    pub fn contains(&self, n: u64) -> bool {
        match self {
            PartSetSpec::Primes => crate::partitions::is_prime(n),
            PartSetSpec::EvenIntegers => n >= 2 && n.is_multiple_of(2),
            PartSetSpec::IntegersFrom(b) => n >= *b,
            PartSetSpec::ExplicitList(set) => set.contains(&n),
            PartSetSpec::AllIntegersFrom1 => n >= 1,
        }
    }

    /// Calls `f` on every element `<= limit`, in increasing order.
    fn visit(&self, limit: u64, mut f: impl FnMut(u64)) {
        match self {
            PartSetSpec::Primes => sieve_visit(limit, f),
            PartSetSpec::EvenIntegers => (1..=limit / 2).for_each(|i| f(2 * i)),
            PartSetSpec::IntegersFrom(b) => (*b..=limit).for_each(f),
            PartSetSpec::AllIntegersFrom1 => (1..=limit).for_each(f),
            PartSetSpec::ExplicitList(set) => set.range(..=limit).for_each(|&n| f(n)),
        }
    }

    /// Upper bound on `sum_{n in X, n > m} n^(-s)` for `s > 1`, `m >= 1`.
    pub fn tail_sum_bound(&self, m: u64, s: f64) -> f64 {
        let integral = |from: f64| from.powf(1.0 - s) / (s - 1.0);
        match self {
            PartSetSpec::IntegersFrom(b) => integral(m.max(b - 1).max(1) as f64),
            PartSetSpec::AllIntegersFrom1 => integral(m.max(1) as f64),
            PartSetSpec::EvenIntegers => {
                let half = (m / 2).max(1) as f64;
                2f64.powf(-s) * integral(half)
            }
            PartSetSpec::Primes => {
                // primes above m >= 2 are odd: sum over odd n >= first
                let first = if m.is_multiple_of(2) { m + 1 } else { m + 2 } as f64;
                let odd = first.powf(-s) + first.powf(1.0 - s) / (2.0 * (s - 1.0));
                // pi(x) < 1.25506 x / ln x (Rosser-Schoenfeld), integrated by parts
                let mf = m.max(2) as f64;
                let dense = 1.25506 * s * mf.powf(1.0 - s) / ((s - 1.0) * mf.ln());
                odd.min(dense)
            }
            PartSetSpec::ExplicitList(set) => {
                set.range(m + 1..).map(|&n| (n as f64).powf(-s)).sum()
            }
        }
    }

    fn smallest(&self) -> u64 {
        match self {
            PartSetSpec::Primes | PartSetSpec::EvenIntegers => 2,
            PartSetSpec::IntegersFrom(b) => *b,
            PartSetSpec::ExplicitList(set) => set.first().copied().unwrap_or(u64::MAX),
            PartSetSpec::AllIntegersFrom1 => 1,
        }
    }

    fn is_finite_below(&self, m: u64) -> bool {
        matches!(self, PartSetSpec::ExplicitList(set) if set.last().is_none_or(|&top| top <= m))
    }
}

impl fmt::Display for PartSetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PartSetSpec::Primes => f.write_str("primes"),
            PartSetSpec::EvenIntegers => f.write_str("even"),
            PartSetSpec::IntegersFrom(b) => write!(f, "from:{b}"),
            PartSetSpec::AllIntegersFrom1 => f.write_str("all"),
            PartSetSpec::ExplicitList(set) => {
                let items: Vec<String> = set.iter().map(u64::to_string).collect();
                write!(f, "list:{}", items.join(","))
            }
        }
    }
}

impl FromStr for PartSetSpec {
    type Err = Error;

    /// `primes`, `even`, `nuclear` (integers from 2), `from:b`, `all`,
    /// `list:2,3,5`.
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        match lower.as_str() {
            "primes" | "prime" => Ok(PartSetSpec::Primes),
            "even" => Ok(PartSetSpec::EvenIntegers),
            "nuclear" => Ok(PartSetSpec::IntegersFrom(2)),
            "all" => Ok(PartSetSpec::AllIntegersFrom1),
            other => {
                if let Some(b) = other.strip_prefix("from:") {
                    let b = b
                        .parse()
                        .map_err(|_| Error::Domain(format!("bad bound in part set '{s}'")))?;
                    Ok(PartSetSpec::IntegersFrom(b))
                } else if let Some(list) = other.strip_prefix("list:") {
                    let mut set = BTreeSet::new();
                    for item in list.split(',').filter(|t| !t.is_empty()) {
                        set.insert(item.trim().parse().map_err(|_| {
                            Error::Domain(format!("bad element '{item}' in part set '{s}'"))
                        })?);
                    }
                    Ok(PartSetSpec::ExplicitList(set))
                } else {
                    Err(Error::Domain(format!("unknown part set '{s}'")))
                }
            }
        }
    }
}

/// Segmented odd-only sieve of Eratosthenes, calling `f` on each prime
/// `<= limit` in increasing order.
fn sieve_visit(limit: u64, mut f: impl FnMut(u64)) {
    if limit < 2 {
        return;
    }
    f(2);
    let root = (limit as f64).sqrt() as u64 + 1;
    let mut base = Vec::new();
    let mut small = vec![true; root as usize + 1];
    for i in (3..=root).step_by(2) {
        if small[i as usize] {
            base.push(i);
            for j in (i * i..=root).step_by(2 * i as usize) {
                small[j as usize] = false;
            }
        }
    }
    // a segment covers the odd numbers low, low + 2, ..., low + 2 (SEG - 1)
    const SEG: u64 = 1 << 18;
    let mut composite = vec![false; SEG as usize];
    let mut low = 3;
    while low <= limit {
        composite.fill(false);
        let high = (low + 2 * (SEG - 1)).min(limit | 1);
        for &p in &base {
            if p * p > high {
                break;
            }
            let mut start = (p * p).max(low.div_ceil(p) * p);
            if start % 2 == 0 {
                start += p;
            }
            for j in (start..=high).step_by(2 * p as usize) {
                composite[((j - low) / 2) as usize] = true;
            }
        }
        let count = ((high - low) / 2 + 1) as usize;
        for (i, &c) in composite[..count].iter().enumerate() {
            let n = low + 2 * i as u64;
            if !c && n <= limit {
                f(n);
            }
        }
        low = high + 2;
    }
}

/// `n^-s`, with an integer-exponent fast path.
fn neg_power(n: u64, s: f64) -> f64 {
    if s.fract() == 0.0 && s <= 64.0 {
        (n as f64).powi(-(s as i32))
    } else {
        (n as f64).powf(-s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ProductKind {
    /// `prod (1 - n^-s)^-1`
    Euler,
    /// `prod (1 + n^-s)`
    Distinct,
}

/// Bound on the log of the omitted factors beyond `m`.
fn log_tail_bound(set: &PartSetSpec, kind: ProductKind, m: u64, s: f64) -> f64 {
    let tail = set.tail_sum_bound(m, s);
    match kind {
        // -ln(1 - x) <= x / (1 - 2^-s) for x <= 2^-s
        ProductKind::Euler => tail / (1.0 - 2f64.powf(-s)),
        ProductKind::Distinct => tail,
    }
}

fn log_factor(kind: ProductKind, x: f64) -> f64 {
    match kind {
        ProductKind::Euler => -(-x).ln_1p(),
        ProductKind::Distinct => x.ln_1p(),
    }
}

/// Picks the truncation point for an Euler-type product so that the
/// absolute error stays below `tol`.
fn choose_truncation(set: &PartSetSpec, kind: ProductKind, s: f64, tol: f64) -> Result<u64> {
    // crude upper bound on the full product from its first 64 factors
    let head_limit = 64;
    let mut head = 0.0;
    set.visit(head_limit, |n| head += log_factor(kind, neg_power(n, s)));
    let upper = (head + log_tail_bound(set, kind, head_limit, s)).exp();
    let target = (tol / upper).ln_1p();
    if set.is_finite_below(head_limit) {
        return Ok(head_limit);
    }
    let mut m = head_limit;
    while log_tail_bound(set, kind, m, s) > target {
        if m >= MAX_TRUNCATION {
            return Err(Error::Domain(format!(
                "tolerance {tol} needs more than {MAX_TRUNCATION} factors at s = {s}"
            )));
        }
        m *= 2;
    }
    // refine downwards between m/2 and m
    let (mut lo, mut hi) = (m / 2, m);
    while hi - lo > hi / 64 + 1 {
        let mid = lo + (hi - lo) / 2;
        if log_tail_bound(set, kind, mid, s) > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(hi.max(set.smallest().min(head_limit)))
}

fn truncated_product(
    set: &PartSetSpec,
    kind: ProductKind,
    m: u64,
    mut factor_input: impl FnMut(u64) -> f64,
) -> (f64, u64) {
    let mut log = CompensatedSum::default();
    let mut count = 0u64;
    set.visit(m, |n| {
        log.add(log_factor(kind, factor_input(n)));
        count += 1;
    });
    (log.value().exp(), count)
}

fn product_eval(
    set: &PartSetSpec,
    kind: ProductKind,
    s: f64,
    tol: f64,
) -> Result<(EvalResult, u64)> {
    require_s_above(s, 1.0)?;
    require_tol(tol)?;
    let m = choose_truncation(set, kind, s, tol)?;
    let (value, count) = truncated_product(set, kind, m, |n| neg_power(n, s));
    let bound = value * log_tail_bound(set, kind, m, s).exp_m1();
    Ok((
        EvalResult {
            value,
            tail_bound: Some(bound),
            terms_used: count,
        },
        m,
    ))
}

/// `zeta_{P_X}(s) = prod_{n in X} (1 - n^-s)^-1`, truncated so that the
/// rigorous tail bound is below `tol`.
pub fn partition_zeta_product(set: &PartSetSpec, s: f64, tol: f64) -> Result<EvalResult> {
    set.validate_for_euler_product()?;
    Ok(product_eval(set, ProductKind::Euler, s, tol)?.0)
}

/// `zeta_D(s) = prod_{n >= 1} (1 + n^-s)`, the sum of `N(l)^-s` over
/// partitions into distinct parts.
pub fn distinct_zeta(s: f64, tol: f64) -> Result<EvalResult> {
    Ok(product_eval(
        &PartSetSpec::AllIntegersFrom1,
        ProductKind::Distinct,
        s,
        tol,
    )?
    .0)
}

/// Evaluates `prod_{n in X} (1 - x^(ln n))^-1` at `x = e^-s` with the same
/// truncation as [`partition_zeta_product`] and compares the two.
pub fn change_of_variables_check(set: &PartSetSpec, s: f64, tol: f64) -> Result<VerifyReport> {
    set.validate_for_euler_product()?;
    let (direct, m) = product_eval(set, ProductKind::Euler, s, tol)?;
    let x = (-s).exp();
    let ln_x = x.ln();
    let (via_x, _) = truncated_product(set, ProductKind::Euler, m, |n| {
        (ln_x * (n as f64).ln()).exp()
    });
    Ok(VerifyReport::numeric(
        format!("change-of-vars X={set} s={s}"),
        via_x,
        direct.value,
        tol,
    )
    .with_note(format!("x = {x:.6e}, {} factors", direct.terms_used)))
}

/// Number of nuclear partitions of norm `nu` (unordered factorizations into
/// factors `>= 2`), by recursive descent over nonincreasing divisors.
pub fn multiplicative_partitions(nu: u64) -> Result<u64> {
    if nu == 0 {
        return Err(Error::Domain("norm must be at least 1".into()));
    }
    let divs = divisors(nu);
    let mut memo = HashMap::new();
    Ok(count_factorizations(nu, nu, &divs, &mut memo))
}

fn count_factorizations(
    m: u64,
    max: u64,
    divs: &[u64],
    memo: &mut HashMap<(u64, u64), u64>,
) -> u64 {
    if m == 1 {
        return 1;
    }
    if let Some(&c) = memo.get(&(m, max)) {
        return c;
    }
    let mut total = 0;
    for &d in divs.iter().skip(1) {
        if d > max || d > m {
            break;
        }
        if m.is_multiple_of(d) {
            total += count_factorizations(m / d, d, divs, memo);
        }
    }
    memo.insert((m, max), total);
    total
}

/// The nuclear partitions of norm `nu`, largest parts first.
pub fn nuclear_partitions_with_norm(nu: u64) -> Result<Vec<Partition>> {
    if nu == 0 {
        return Err(Error::Domain("norm must be at least 1".into()));
    }
    let divs = divisors(nu);
    let mut out = Vec::new();
    let mut stack = Vec::new();
    collect_factorizations(nu, nu, &divs, &mut stack, &mut out);
    Ok(out)
}

fn collect_factorizations(
    m: u64,
    max: u64,
    divs: &[u64],
    stack: &mut Vec<u64>,
    out: &mut Vec<Partition>,
) {
    if m == 1 {
        out.push(Partition::from_sorted_descending(stack));
        return;
    }
    for &d in divs.iter().skip(1).rev() {
        if d <= max && d <= m && m.is_multiple_of(d) {
            stack.push(d);
            collect_factorizations(m / d, d, divs, stack, out);
            stack.pop();
        }
    }
}

/// `P~(1), ..., P~(limit)` at once, as the Dirichlet coefficients of
/// `prod_{n >= 2} 1/(1 - n^-s)` (index 0 is unused and zero).
pub fn multiplicative_partition_table(limit: u64) -> Vec<u64> {
    let limit = limit as usize;
    let mut a = vec![0u64; limit + 1];
    if limit == 0 {
        return a;
    }
    a[1] = 1;
    for n in 2..=limit {
        // multiply by 1/(1 - n^-s): a[k n] += a[k], k increasing
        for k in 1..=limit / n {
            a[k * n] += a[k];
        }
    }
    a
}

/// Partial sum `sum_{nu <= nu_max} P~(nu) / nu^s`. No rigorous tail bound is
/// available, so `tail_bound` is `None`.
pub fn nuclear_zeta_dirichlet(s: f64, nu_max: u64) -> Result<EvalResult> {
    require_s_above(s, 1.0)?;
    let table = multiplicative_partition_table(nu_max);
    let mut sum = CompensatedSum::default();
    for (nu, &count) in table.iter().enumerate().skip(1) {
        if count > 0 {
            sum.add(count as f64 * (nu as f64).powf(-s));
        }
    }
    Ok(EvalResult {
        value: sum.value(),
        tail_bound: None,
        terms_used: nu_max,
    })
}

/// `zeta_P({s}^k) = sum_{l |- k} prod_j zeta(js)^{m_j} / (N(l) prod m_j!)`
/// in double precision. `tail_bound` propagates the zeta evaluation errors.
pub fn fixed_length_zeta_faa(s: f64, k: u64, tol: f64) -> Result<EvalResult> {
    require_s_above(s, 1.0)?;
    require_tol(tol)?;
    Limits::default().check_enumeration(k)?;
    if k == 0 {
        return Ok(EvalResult {
            value: 1.0,
            tail_bound: Some(0.0),
            terms_used: 1,
        });
    }
    let zetas: Vec<EvalResult> = (1..=k)
        .map(|j| riemann_zeta(j as f64 * s, tol / (4.0 * k as f64)))
        .collect::<Result<_>>()?;
    let mut total = CompensatedSum::default();
    let mut err = 0.0;
    let mut count = 0;
    for lam in enumerate(k, &PartitionClass::All) {
        let weight = rational_to_f64(&macmahon_weight(&lam));
        let mut term = weight;
        let mut rel = 0.0;
        for &(part, mult) in lam.frequencies() {
            let z = &zetas[part as usize - 1];
            term *= z.value.powi(mult as i32);
            rel += mult as f64 * z.tail_bound.unwrap_or(0.0) / z.value;
        }
        total.add(term);
        err += term * rel;
        count += 1;
    }
    Ok(EvalResult {
        value: total.value(),
        tail_bound: Some(err),
        terms_used: count,
    })
}

/// Exact `zeta_P({m}^k)` for even `m`, as a rational multiple of `pi^(mk)`.
pub fn fixed_length_zeta_faa_exact(m: u32, k: u64) -> Result<PiValue> {
    if m == 0 || m % 2 == 1 {
        return Err(Error::Domain(format!(
            "exact path needs a positive even argument, got {m}"
        )));
    }
    Limits::default().check_enumeration(k)?;
    if k == 0 {
        return Ok(PiValue::rational(BigRational::one()));
    }
    let zetas: Vec<PiValue> = (1..=k as u32)
        .map(|j| riemann_zeta_even_exact(j * m / 2))
        .collect::<Result<_>>()?;
    let mut total = PiValue::zero(m * k as u32);
    for lam in enumerate(k, &PartitionClass::All) {
        let mut term = PiValue::rational(macmahon_weight(&lam));
        for &(part, mult) in lam.frequencies() {
            for _ in 0..mult {
                term = &term * &zetas[part as usize - 1];
            }
        }
        total = total.checked_add(&term)?;
    }
    Ok(total)
}

/// `sum N(l)^-s` over partitions of length exactly `k` with parts `<= m`,
/// by the recurrence `F[j] += m^-s F[j-1]` over `m = 1, 2, ...`. Monotone in
/// `m` and a lower bound for the full sum. The bound on the omitted terms is
/// `zeta(s)^(k-1) * sum_{n > m} n^-s`.
pub fn fixed_length_zeta_direct(s: f64, k: u64, part_bound: u64) -> Result<EvalResult> {
    require_s_above(s, 1.0)?;
    if part_bound == 0 {
        return Err(Error::Domain("part bound must be at least 1".into()));
    }
    let k = k as usize;
    let mut levels = vec![CompensatedSum::default(); k + 1];
    levels[0].add(1.0);
    for n in 1..=part_bound {
        let x = (n as f64).powf(-s);
        for j in 1..=k {
            let prev = levels[j - 1].value();
            levels[j].add(x * prev);
        }
    }
    let tail = if k == 0 {
        0.0
    } else {
        let zeta_upper = 1.0 + 1.0 / (s - 1.0);
        zeta_upper.powi(k as i32 - 1) * (part_bound as f64).powf(1.0 - s) / (s - 1.0)
    };
    Ok(EvalResult {
        value: levels[k].value(),
        tail_bound: Some(tail),
        terms_used: part_bound,
    })
}

/// `zeta_P({2}^k) = (2^(2k-1) - 1) / 2^(2k-2) * zeta(2k)` for `k >= 1`.
pub fn fixed_length_zeta_closed_s2(k: u32) -> Result<PiValue> {
    if k == 0 {
        return Err(Error::Domain("closed form needs k >= 1".into()));
    }
    let num = BigInt::from(2).pow(2 * k - 1) - 1;
    let den = BigInt::from(2).pow(2 * k - 2);
    Ok(riemann_zeta_even_exact(k)?.scale(&BigRational::new(num, den)))
}

/// Partial sum `sum_{k < terms} zeta_P({2}^k) / 100^k` from the exact
/// fixed-length values; the full series is `phi pi / 5`.
pub fn golden_ratio_series(terms: u32) -> Result<EvalResult> {
    if terms == 0 {
        return Err(Error::Domain("need at least one term".into()));
    }
    let mut sum = CompensatedSum::default();
    for k in 0..terms {
        let z = fixed_length_zeta_faa_exact(2, k as u64)?;
        sum.add(z.to_f64() / 100f64.powi(k as i32));
    }
    // zeta_P({2}^k) < 2 zeta(2) for every k
    let tail = 2.0 * (std::f64::consts::PI.powi(2) / 6.0) * 100f64.powi(-(terms as i32)) / 0.99;
    Ok(EvalResult {
        value: sum.value(),
        tail_bound: Some(tail),
        terms_used: terms as u64,
    })
}

/// Partition phi: `N(l) prod_{distinct parts p} (1 - 1/p)`.
pub fn phi_partition(lam: &Partition) -> BigRational {
    let norm = BigRational::from_integer(BigInt::from(lam.norm()));
    lam.distinct_parts().fold(norm, |acc, p| {
        acc * BigRational::new(BigInt::from(p - 1), BigInt::from(p))
    })
}

/// Checks `sum_{d | l} phi_P(d) = N(l)` over subpartitions.
pub fn phi_divisor_sum_check(lam: &Partition, limits: &Limits) -> Result<VerifyReport> {
    let count: u64 = lam.frequencies().iter().map(|&(_, m)| m + 1).product();
    if count > limits.max_partitions {
        return Err(Error::CeilingExceeded {
            n: lam.size(),
            count: count.to_string(),
            ceiling: limits.max_partitions,
        });
    }
    let sum: BigRational = subpartitions(lam).map(|d| phi_partition(&d)).sum();
    Ok(VerifyReport::exact(
        format!("phi-sum {lam}"),
        sum,
        lam.norm(),
    ))
}

fn recip_power(n: u64, e: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(n).pow(e))
}

/// The per-part factor identity behind the phi Dirichlet series, in exact
/// arithmetic at integer `s`:
/// `1 + (1 - 1/n) n^(1-s) / (1 - n^(1-s)) = (1 - n^-s) / (1 - n^(1-s))`.
pub fn phi_factor_identity_check(n: u64, s: u32) -> Result<VerifyReport> {
    if s <= 2 || n < 2 {
        return Err(Error::Domain(format!(
            "need n >= 2 and s > 2, got n = {n}, s = {s}"
        )));
    }
    let one = BigRational::one();
    let y = recip_power(n, s - 1);
    let x = recip_power(n, s);
    let lhs = &one + (&one - recip_power(n, 1)) * &y / (&one - &y);
    let rhs = (&one - &x) / (&one - &y);
    Ok(VerifyReport::exact(
        format!("phi-factor n={n} s={s}"),
        lhs,
        rhs,
    ))
}

/// Checks `sum_{l in P_X} phi_P(l) / N(l)^s = zeta_{P_X}(s-1) / zeta_{P_X}(s)`.
///
/// For a finite explicit set and integer `s` both sides are exact rationals
/// and must be equal. Otherwise the per-part identity is checked exactly
/// (integer `s`, parts up to 50) and the truncated product of left-hand
/// factors is compared numerically with the ratio of two Euler products.
pub fn phi_dirichlet_check(set: &PartSetSpec, s: f64, tol: f64) -> Result<VerifyReport> {
    require_s_above(s, 2.0)?;
    require_tol(tol)?;
    set.validate_for_euler_product()?;
    let int_s = (s.fract() == 0.0 && s < 64.0).then_some(s as u32);
    let identity = format!("phi-dirichlet X={set} s={s}");

    if let (Some(si), PartSetSpec::ExplicitList(list)) = (int_s, set) {
        let one = BigRational::one();
        let mut lhs = one.clone();
        let mut num = one.clone();
        let mut den = one.clone();
        for &n in list {
            let y = recip_power(n, si - 1);
            let x = recip_power(n, si);
            lhs *= &one + (&one - recip_power(n, 1)) * &y / (&one - &y);
            // zeta(s-1) / zeta(s) = prod (1 - n^-s) / (1 - n^(1-s))
            num *= &one - &x;
            den *= &one - &y;
        }
        return Ok(VerifyReport::exact(identity, lhs, num / den));
    }

    let mut notes = Vec::new();
    if let Some(si) = int_s {
        let mut checked = 0;
        for n in (2..=50).filter(|&n| set.contains(n)) {
            let r = phi_factor_identity_check(n, si)?;
            if !r.passed() {
                return Ok(r.with_note(format!("factor identity fails at n = {n}")));
            }
            checked += 1;
        }
        notes.push(format!("factor identity exact for {checked} parts <= 50"));
    }

    let (upper, m) = product_eval(set, ProductKind::Euler, s - 1.0, tol)?;
    let lower = partition_zeta_product(set, s, tol)?;
    let mut log = CompensatedSum::default();
    set.visit(m, |n| {
        let y = (n as f64).powf(1.0 - s);
        let factor_minus_one = (1.0 - 1.0 / n as f64) * y / (1.0 - y);
        log.add(factor_minus_one.ln_1p());
    });
    let lhs = log.value().exp();
    let rhs = upper.value / lower.value;
    notes.push(format!("{} factors", upper.terms_used));
    Ok(VerifyReport::numeric(identity, lhs, rhs, tol).with_note(notes.join(", ")))
}
