//! Integer partitions in frequency form, restricted partition classes and
//! the small number-theoretic helpers the rest of the crate leans on.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An integer partition stored as `(part, multiplicity)` pairs with parts
/// strictly increasing and every multiplicity at least one.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition {
    freq: Vec<(u64, u64)>,
    size: u64,
    length: u64,
}

impl Partition {
    /// The empty partition, the unique partition of zero.
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a partition from its parts in any order. Zero and negative
    /// parts are rejected.
    pub fn from_parts(parts: &[i64]) -> Result<Self> {
        let mut positive = Vec::with_capacity(parts.len());
        for &p in parts {
            if p <= 0 {
                return Err(Error::NonPositivePart(p));
            }
            positive.push(p as u64);
        }
        positive.sort_unstable();
        Ok(Self::from_sorted_ascending(&positive))
    }

    /// Builds a partition from `(part, multiplicity)` pairs. Pairs may repeat
    /// a part (multiplicities are added) and zero multiplicities are dropped.
    pub fn from_frequencies<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u64, u64)>,
    {
        let mut freq: Vec<(u64, u64)> = Vec::new();
        for (part, mult) in pairs {
            if part == 0 {
                return Err(Error::NonPositivePart(0));
            }
            if mult > 0 {
                freq.push((part, mult));
            }
        }
        freq.sort_unstable();
        let mut merged: Vec<(u64, u64)> = Vec::with_capacity(freq.len());
        for (part, mult) in freq {
            match merged.last_mut() {
                Some(last) if last.0 == part => last.1 += mult,
                _ => merged.push((part, mult)),
            }
        }
        Ok(Self::from_freq_unchecked(merged))
    }

    pub(crate) fn from_freq_unchecked(freq: Vec<(u64, u64)>) -> Self {
        let size = freq.iter().map(|&(p, m)| p * m).sum();
        let length = freq.iter().map(|&(_, m)| m).sum();
        Self { freq, size, length }
    }

    fn from_sorted_ascending(parts: &[u64]) -> Self {
        let mut freq: Vec<(u64, u64)> = Vec::new();
        for &p in parts {
            match freq.last_mut() {
                Some(last) if last.0 == p => last.1 += 1,
                _ => freq.push((p, 1)),
            }
        }
        Self::from_freq_unchecked(freq)
    }

    /// Parts given in nonincreasing order, as produced by the enumerator.
    pub(crate) fn from_sorted_descending(parts: &[u64]) -> Self {
        let mut freq: Vec<(u64, u64)> = Vec::new();
        for &p in parts.iter().rev() {
            match freq.last_mut() {
                Some(last) if last.0 == p => last.1 += 1,
                _ => freq.push((p, 1)),
            }
        }
        Self::from_freq_unchecked(freq)
    }

    /// `(part, multiplicity)` pairs in increasing part order.
    pub fn frequencies(&self) -> &[(u64, u64)] {
        &self.freq
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    /// Number of parts, counted with multiplicity.
    pub fn length(&self) -> u64 {
        self.length
    }

    pub fn is_empty(&self) -> bool {
        self.freq.is_empty()
    }

    /// Largest part; zero for the empty partition.
    pub fn largest_part(&self) -> u64 {
        self.freq.last().map_or(0, |&(p, _)| p)
    }

    pub fn smallest_part(&self) -> Option<u64> {
        self.freq.first().map(|&(p, _)| p)
    }

    /// Dyson's rank: largest part minus number of parts (zero for the empty
    /// partition).
    pub fn rank(&self) -> i64 {
        self.largest_part() as i64 - self.length as i64
    }

    pub fn multiplicity(&self, part: u64) -> u64 {
        self.freq
            .binary_search_by_key(&part, |&(p, _)| p)
            .map_or(0, |i| self.freq[i].1)
    }

    /// Distinct parts in increasing order.
    pub fn distinct_parts(&self) -> impl Iterator<Item = u64> + '_ {
        self.freq.iter().map(|&(p, _)| p)
    }

    /// Parts with repetition, largest first.
    pub fn parts(&self) -> impl Iterator<Item = u64> + '_ {
        self.freq
            .iter()
            .rev()
            .flat_map(|&(p, m)| std::iter::repeat_n(p, m as usize))
    }

    pub fn parts_vec(&self) -> Vec<u64> {
        self.parts().collect()
    }

    /// Product of the parts; the empty product is one.
    pub fn norm(&self) -> BigUint {
        let mut acc = BigUint::one();
        for &(p, m) in &self.freq {
            if p > 1 {
                acc *= BigUint::from(p).pow(m as u32);
            }
        }
        acc
    }

    /// Removes one copy of `part`.
    pub fn delete_part(&self, part: u64) -> Result<Partition> {
        let idx = self
            .freq
            .binary_search_by_key(&part, |&(p, _)| p)
            .map_err(|_| Error::NotAPart {
                part,
                partition: self.to_string(),
            })?;
        let mut freq = self.freq.clone();
        if freq[idx].1 == 1 {
            freq.remove(idx);
        } else {
            freq[idx].1 -= 1;
        }
        Ok(Self::from_freq_unchecked(freq))
    }

    /// Frequency notation such as `<1 3^2 4>`.
    pub fn frequency_notation(&self) -> String {
        let body: Vec<String> = self
            .freq
            .iter()
            .map(|&(p, m)| {
                if m == 1 {
                    p.to_string()
                } else {
                    format!("{p}^{m}")
                }
            })
            .collect();
        format!("<{}>", body.join(" "))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.parts().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

/// Lexicographic order on the nonincreasing part sequences. Enumeration
/// yields partitions in decreasing order under this comparison.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.parts().cmp(other.parts())
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.parts())
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<i64>::deserialize(deserializer)?;
        Partition::from_parts(&parts).map_err(serde::de::Error::custom)
    }
}

/// A set of allowed part sizes for [`PartitionClass::AllowedParts`].
#[derive(Debug, Clone)]
pub enum PartSet {
    Explicit(BTreeSet<u64>),
    /// Every integer at least the bound.
    AtLeast(u64),
    /// Integers at least `min` that pass `test`.
    Predicate {
        name: &'static str,
        min: u64,
        test: fn(u64) -> bool,
    },
}

impl PartSet {
    pub fn contains(&self, part: u64) -> bool {
        match self {
            PartSet::Explicit(set) => set.contains(&part),
            PartSet::AtLeast(b) => part >= *b,
            PartSet::Predicate { min, test, .. } => part >= *min && test(part),
        }
    }
}

impl PartialEq for PartSet {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (PartSet::Explicit(a), PartSet::Explicit(b)) => a == b,
            (PartSet::AtLeast(a), PartSet::AtLeast(b)) => a == b,
            (
                PartSet::Predicate {
                    name: a, min: ma, ..
                },
                PartSet::Predicate {
                    name: b, min: mb, ..
                },
            ) => a == b && ma == mb,
            _ => false,
        }
    }
}

impl Eq for PartSet {}

/// A restricted family of partitions. Every class contains the empty
/// partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PartitionClass {
    All,
    Distinct,
    OddParts,
    EvenParts,
    PrimeParts,
    /// No part equal to one.
    Nuclear,
    /// Consecutive parts differ by at least two.
    RogersRamanujan,
    /// Difference at least two and no two consecutive even numbers as parts.
    GollnitzGordon,
    /// Difference at least three and no two consecutive multiples of three.
    Schur,
    AllowedParts(PartSet),
}

impl PartitionClass {
    /// Every named class, in CLI order.
    pub const NAMED: [PartitionClass; 9] = [
        PartitionClass::All,
        PartitionClass::Distinct,
        PartitionClass::OddParts,
        PartitionClass::EvenParts,
        PartitionClass::PrimeParts,
        PartitionClass::Nuclear,
        PartitionClass::RogersRamanujan,
        PartitionClass::GollnitzGordon,
        PartitionClass::Schur,
    ];

    pub fn name(&self) -> String {
        match self {
            PartitionClass::All => "all".into(),
            PartitionClass::Distinct => "distinct".into(),
            PartitionClass::OddParts => "odd".into(),
            PartitionClass::EvenParts => "even".into(),
            PartitionClass::PrimeParts => "prime".into(),
            PartitionClass::Nuclear => "nuclear".into(),
            PartitionClass::RogersRamanujan => "rr".into(),
            PartitionClass::GollnitzGordon => "gg".into(),
            PartitionClass::Schur => "schur".into(),
            PartitionClass::AllowedParts(PartSet::Explicit(set)) => {
                let items: Vec<String> = set.iter().map(u64::to_string).collect();
                format!("parts:{}", items.join(","))
            }
            PartitionClass::AllowedParts(PartSet::AtLeast(b)) => format!("min:{b}"),
            PartitionClass::AllowedParts(PartSet::Predicate { name, .. }) => (*name).to_string(),
        }
    }

    pub fn allows_part(&self, part: u64) -> bool {
        match self {
            PartitionClass::OddParts => part % 2 == 1,
            PartitionClass::EvenParts => part.is_multiple_of(2),
            PartitionClass::PrimeParts => is_prime(part),
            PartitionClass::Nuclear => part >= 2,
            PartitionClass::AllowedParts(set) => set.contains(part),
            _ => part >= 1,
        }
    }

    /// Whether `smaller` may immediately follow `larger` in the nonincreasing
    /// part sequence.
    pub fn allows_adjacent(&self, larger: u64, smaller: u64) -> bool {
        let gap = larger - smaller;
        match self {
            PartitionClass::Distinct => gap >= 1,
            PartitionClass::RogersRamanujan => gap >= 2,
            PartitionClass::GollnitzGordon => gap >= 3 || (gap == 2 && smaller % 2 == 1),
            PartitionClass::Schur => gap >= 4 || (gap == 3 && !smaller.is_multiple_of(3)),
            _ => true,
        }
    }

    fn min_gap(&self) -> u64 {
        match self {
            PartitionClass::Distinct => 1,
            PartitionClass::RogersRamanujan | PartitionClass::GollnitzGordon => 2,
            PartitionClass::Schur => 3,
            _ => 0,
        }
    }

    pub fn contains(&self, partition: &Partition) -> bool {
        let parts = partition.parts_vec();
        parts.iter().all(|&p| self.allows_part(p))
            && parts.windows(2).all(|w| self.allows_adjacent(w[0], w[1]))
    }
}

impl fmt::Display for PartitionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for PartitionClass {
    type Err = Error;

    /// Accepts the short names (`all`, `distinct`, `odd`, `even`, `prime`,
    /// `nuclear`, `rr`, `gg`, `schur`), `parts:2,3,5` for an explicit part
    /// set and `min:b` for parts at least `b`.
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        let class = match lower.as_str() {
            "all" => PartitionClass::All,
            "distinct" => PartitionClass::Distinct,
            "odd" => PartitionClass::OddParts,
            "even" => PartitionClass::EvenParts,
            "prime" | "primes" => PartitionClass::PrimeParts,
            "nuclear" => PartitionClass::Nuclear,
            "rr" | "rogers-ramanujan" => PartitionClass::RogersRamanujan,
            "gg" | "gollnitz-gordon" => PartitionClass::GollnitzGordon,
            "schur" => PartitionClass::Schur,
            other => {
                if let Some(list) = other.strip_prefix("parts:") {
                    let mut set = BTreeSet::new();
                    for item in list.split(',').filter(|t| !t.is_empty()) {
                        let v: u64 = item.trim().parse().map_err(|_| {
                            Error::Domain(format!("bad part '{item}' in class '{s}'"))
                        })?;
                        if v == 0 {
                            return Err(Error::NonPositivePart(0));
                        }
                        set.insert(v);
                    }
                    PartitionClass::AllowedParts(PartSet::Explicit(set))
                } else if let Some(b) = other.strip_prefix("min:") {
                    let b: u64 = b
                        .trim()
                        .parse()
                        .map_err(|_| Error::Domain(format!("bad bound in class '{s}'")))?;
                    PartitionClass::AllowedParts(PartSet::AtLeast(b.max(1)))
                } else {
                    return Err(Error::Domain(format!("unknown partition class '{s}'")));
                }
            }
        };
        Ok(class)
    }
}

/// Iterator over the partitions of `n` in a class, in lexicographically
/// decreasing order of the part sequence.
#[derive(Debug, Clone)]
pub struct Partitions {
    n: u64,
    class: PartitionClass,
    parts: Vec<u64>,
    sum: u64,
    /// Next candidate to try at each depth; `cands.len() == parts.len() + 1`
    /// while the search is live.
    cands: Vec<u64>,
    /// Smallest first part still to be tried.
    first_floor: u64,
    empty_pending: bool,
}

/// All partitions of `n` in `class`. For `n = 0` this yields only the empty
/// partition.
pub fn enumerate(n: u64, class: &PartitionClass) -> Partitions {
    Partitions {
        n,
        class: class.clone(),
        parts: Vec::new(),
        sum: 0,
        cands: if n == 0 { Vec::new() } else { vec![n] },
        first_floor: 1,
        empty_pending: n == 0,
    }
}

/// The partitions of `n` in `class` whose largest part is exactly `largest`.
/// Concatenating these over `largest = n, n-1, ..., 1` reproduces
/// [`enumerate`], so the ranges can be handed to separate workers.
pub fn enumerate_with_largest(n: u64, class: &PartitionClass, largest: u64) -> Partitions {
    let live = n > 0 && largest >= 1 && largest <= n;
    Partitions {
        n,
        class: class.clone(),
        parts: Vec::new(),
        sum: 0,
        cands: if live { vec![largest] } else { Vec::new() },
        first_floor: largest.max(1),
        empty_pending: n == 0 && largest == 0,
    }
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if self.empty_pending {
            self.empty_pending = false;
            return Some(Partition::empty());
        }
        loop {
            let depth = self.parts.len();
            let c = *self.cands.last()?;
            let floor = if depth == 0 { self.first_floor } else { 1 };
            if c < floor {
                self.cands.pop();
                if let Some(p) = self.parts.pop() {
                    self.sum -= p;
                }
                continue;
            }
            *self.cands.last_mut().unwrap() = c - 1;
            if !self.class.allows_part(c) {
                continue;
            }
            if let Some(&prev) = self.parts.last() {
                if !self.class.allows_adjacent(prev, c) {
                    continue;
                }
            }
            let remaining = self.n - self.sum - c;
            // parts following c are at most c - gap, c - 2 gap, ...; skip
            // prefixes that cannot be completed
            let gap = self.class.min_gap();
            if gap > 0 && remaining > 0 && remaining > max_gapped_sum(c, gap) {
                // smaller c only lowers the bound further
                *self.cands.last_mut().unwrap() = 0;
                continue;
            }
            self.parts.push(c);
            self.sum += c;
            if remaining == 0 {
                let out = Partition::from_sorted_descending(&self.parts);
                self.parts.pop();
                self.sum -= c;
                return Some(out);
            }
            self.cands.push(c.min(remaining));
        }
    }
}

/// Largest sum of parts below `top` with pairwise gaps at least `gap`.
fn max_gapped_sum(top: u64, gap: u64) -> u64 {
    if top <= gap {
        return 0;
    }
    let first = top - gap;
    let count = (first - 1) / gap + 1;
    // first + (first - gap) + ... over `count` terms
    count * first - gap * count * (count - 1) / 2
}

/// Iterator over the subpartitions of a partition: every partition whose
/// multiplicities are dominated by those of the parent.
#[derive(Debug, Clone)]
pub struct Subpartitions {
    freq: Vec<(u64, u64)>,
    counter: Vec<u64>,
    done: bool,
}

/// Starts at the empty partition and ends at `partition` itself; the count
/// is the product of `multiplicity + 1` over the distinct parts.
pub fn subpartitions(partition: &Partition) -> Subpartitions {
    Subpartitions {
        freq: partition.freq.clone(),
        counter: vec![0; partition.freq.len()],
        done: false,
    }
}

impl Iterator for Subpartitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if self.done {
            return None;
        }
        let out = Partition::from_freq_unchecked(
            self.freq
                .iter()
                .zip(&self.counter)
                .filter(|(_, &c)| c > 0)
                .map(|(&(p, _), &c)| (p, c))
                .collect(),
        );
        // mixed-radix increment
        let mut i = 0;
        loop {
            if i == self.counter.len() {
                self.done = true;
                break;
            }
            if self.counter[i] < self.freq[i].1 {
                self.counter[i] += 1;
                break;
            }
            self.counter[i] = 0;
            i += 1;
        }
        Some(out)
    }
}

/// Trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) || n.is_multiple_of(3) {
        return false;
    }
    let mut d = 5u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) || n.is_multiple_of(d + 2) {
            return false;
        }
        d += 6;
    }
    true
}

/// Prime factorization as `(prime, exponent)` pairs in increasing prime
/// order. `factorize(1)` is empty.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Sum of divisors.
pub fn sigma(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .map(|(p, e)| (p.pow(e + 1) - 1) / (p - 1))
        .product()
}

/// Divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut divs = vec![1u64];
    for (p, e) in factorize(n) {
        let current = divs.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..current {
                divs.push(divs[i] * pk);
            }
        }
    }
    divs.sort_unstable();
    divs
}
