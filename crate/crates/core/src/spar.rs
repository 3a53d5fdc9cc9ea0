//! Superpartitions.
//!
//! A superpartition is a finite sequence of parts. Each part is a
//! nonnegative value with one of four marks: plain, over (`o`, one
//! fermion of the first kind), under (`u`, one fermion of the second kind)
//! or both (`b`, one of each). Over parts must have pairwise distinct
//! values, as must under parts. Plain zeros carry no information and are
//! dropped; marked zeros are kept.
//!
//! Parts are stored in canonical order: value descending, and at equal
//! value `b`, then `o`, then `u`, then plain.
//!
//! Textual form: `[2b,1o,0u]`, plain parts as bare numbers, `[]` for the
//! empty superpartition.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

/// Decoration of a part. Declaration order is the tie-break rank.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Mark {
    Plain,
    Under,
    Over,
    Both,
}

impl Mark {
    pub const ALL: [Mark; 4] = [Mark::Plain, Mark::Over, Mark::Under, Mark::Both];

    pub fn has_over(self) -> bool {
        matches!(self, Mark::Over | Mark::Both)
    }

    pub fn has_under(self) -> bool {
        matches!(self, Mark::Under | Mark::Both)
    }

    /// Number of fermions carried (0, 1 or 2).
    pub fn fermions(self) -> u32 {
        self.has_over() as u32 + self.has_under() as u32
    }

    /// True for the two marks carrying a single fermion.
    pub fn is_odd(self) -> bool {
        self.fermions() == 1
    }

    pub fn from_flags(over: bool, under: bool) -> Mark {
        match (over, under) {
            (false, false) => Mark::Plain,
            (true, false) => Mark::Over,
            (false, true) => Mark::Under,
            (true, true) => Mark::Both,
        }
    }

    /// Merge of two marks on a sum of parts; `None` when the fermions clash.
    pub fn add(self, other: Mark) -> Option<Mark> {
        if (self.has_over() && other.has_over()) || (self.has_under() && other.has_under()) {
            return None;
        }
        Some(Mark::from_flags(
            self.has_over() || other.has_over(),
            self.has_under() || other.has_under(),
        ))
    }

    fn suffix(self) -> &'static str {
        match self {
            Mark::Plain => "",
            Mark::Over => "o",
            Mark::Under => "u",
            Mark::Both => "b",
        }
    }

    /// Short name used in textual formats (`plain`, `o`, `u`, `b`).
    pub fn name(self) -> &'static str {
        match self {
            Mark::Plain => "plain",
            m => m.suffix(),
        }
    }

    pub fn from_name(s: &str) -> Option<Mark> {
        match s {
            "plain" | "" => Some(Mark::Plain),
            "o" | "over" => Some(Mark::Over),
            "u" | "under" => Some(Mark::Under),
            "b" | "both" => Some(Mark::Both),
            _ => None,
        }
    }
}

/// One part. The derived order is `(value, mark rank)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Part {
    pub value: u32,
    pub mark: Mark,
}

impl Part {
    pub const fn new(value: u32, mark: Mark) -> Self {
        Part { value, mark }
    }

    pub const fn plain(value: u32) -> Self {
        Part::new(value, Mark::Plain)
    }

    /// Twice the weight: `2a`, `2a + 1` for a single fermion, `2a + 2` for both.
    pub fn weight2(self) -> u64 {
        2 * self.value as u64 + self.mark.fermions() as u64
    }

    /// Sum of two parts; `None` when it annihilates.
    pub fn add(self, other: Part) -> Option<Part> {
        Some(Part::new(self.value + other.value, self.mark.add(other.mark)?))
    }
}

impl fmt::Display for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.value, self.mark.suffix())
    }
}

/// `(n | m_over, m_under)`: total value and fermion counts of each kind.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Sector {
    pub n: u32,
    pub over: u32,
    pub under: u32,
}

impl Sector {
    pub const fn new(n: u32, over: u32, under: u32) -> Self {
        Sector { n, over, under }
    }

    pub fn fermions(self) -> u32 {
        self.over + self.under
    }

    /// Sign `(-1)^(k(k-1)/2)` with `k` the total fermion count.
    pub fn top_sign_negative(self) -> bool {
        let k = self.fermions() as u64;
        (k * k.saturating_sub(1) / 2) % 2 == 1
    }

    /// Upper bound on the length of any superpartition in the sector.
    pub fn max_length(self) -> usize {
        enumerate_sector(self)
            .iter()
            .map(|s| s.len())
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for Sector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}|{},{})", self.n, self.over, self.under)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SparError {
    /// Two `o` parts (or two `u` parts) share a value.
    NotDistinct(Part),
    /// A token of the textual form could not be read.
    Parse(String),
    /// Inserting the part would break the superpartition conditions.
    OrderViolation(Part),
}

impl fmt::Display for SparError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SparError::NotDistinct(p) => write!(f, "repeated fermionic part {p}"),
            SparError::Parse(t) => write!(f, "cannot parse token `{t}`"),
            SparError::OrderViolation(p) => write!(f, "cannot insert part {p}"),
        }
    }
}

/// Validated superpartition in canonical order.
///
/// The derived `Ord` is lexicographic on the stored parts; it is used for
/// map keys only. See [`compare`] for the enumeration order and
/// [`weight_compare`] for the dominance order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct SuperPartition {
    parts: Vec<Part>,
}

impl SuperPartition {
    /// Sorts, drops plain zeros and rejects repeated `o` or `u` parts.
    pub fn new(mut parts: Vec<Part>) -> Result<Self, SparError> {
        parts.retain(|p| !(p.value == 0 && p.mark == Mark::Plain));
        parts.sort_by(|a, b| b.cmp(a));
        if let Some(w) = parts.windows(2).find(|w| w[0] == w[1] && w[0].mark.is_odd()) {
            return Err(SparError::NotDistinct(w[0]));
        }
        Ok(SuperPartition { parts })
    }

    pub fn empty() -> Self {
        SuperPartition { parts: Vec::new() }
    }

    /// An ordinary partition with no fermions.
    pub fn from_partition(values: &[u32]) -> Self {
        Self::new(values.iter().map(|&v| Part::plain(v)).collect()).expect("plain parts")
    }

    pub fn parts(&self) -> &[Part] {
        &self.parts
    }

    /// Length (marked zeros count, plain zeros never stored).
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Total value `|Λ|`.
    pub fn size(&self) -> u32 {
        self.parts.iter().map(|p| p.value).sum()
    }

    pub fn sector(&self) -> Sector {
        Sector {
            n: self.size(),
            over: self.parts.iter().filter(|p| p.mark.has_over()).count() as u32,
            under: self.parts.iter().filter(|p| p.mark.has_under()).count() as u32,
        }
    }

    pub fn count_mark(&self, m: Mark) -> usize {
        self.parts.iter().filter(|p| p.mark == m).count()
    }

    /// Parts with a given mark, in stored order.
    pub fn values_with(&self, m: Mark) -> Vec<u32> {
        self.parts
            .iter()
            .filter(|p| p.mark == m)
            .map(|p| p.value)
            .collect()
    }

    /// Partial sums of doubled weights.
    pub fn prefix_weights2(&self) -> Vec<u64> {
        let mut acc = 0;
        self.parts
            .iter()
            .map(|p| {
                acc += p.weight2();
                acc
            })
            .collect()
    }

    /// Twice the total weight, `2n + m_over + m_under`.
    pub fn weight2(&self) -> u64 {
        self.parts.iter().map(|p| p.weight2()).sum()
    }

    /// Partwise sum after padding with plain zeros; `None` on annihilation.
    pub fn add(&self, other: &SuperPartition) -> Option<SuperPartition> {
        let n = self.len().max(other.len());
        let zero = Part::plain(0);
        let mut parts = Vec::with_capacity(n);
        for k in 0..n {
            let a = *self.parts.get(k).unwrap_or(&zero);
            let b = *other.parts.get(k).unwrap_or(&zero);
            parts.push(a.add(b)?);
        }
        SuperPartition::new(parts).ok()
    }

    /// Adds one part. The only failure is a repeated fermionic part.
    pub fn insert_part(&self, p: Part) -> Result<SuperPartition, SparError> {
        let mut parts = self.parts.clone();
        parts.push(p);
        SuperPartition::new(parts).map_err(|_| SparError::OrderViolation(p))
    }
}

impl fmt::Display for SuperPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for SuperPartition {
    type Err = SparError;

    fn from_str(s: &str) -> Result<Self, SparError> {
        let t = s.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .or_else(|| t.strip_prefix('(').and_then(|r| r.strip_suffix(')')))
            .ok_or_else(|| SparError::Parse(t.to_string()))?;
        let mut parts = Vec::new();
        for tok in inner.split(',') {
            let tok = tok.trim();
            if tok.is_empty() {
                if inner.trim().is_empty() {
                    break;
                }
                return Err(SparError::Parse(tok.to_string()));
            }
            let split = tok
                .find(|c: char| !c.is_ascii_digit())
                .unwrap_or(tok.len());
            let (num, suf) = tok.split_at(split);
            let value: u32 = num
                .parse()
                .map_err(|_| SparError::Parse(tok.to_string()))?;
            let mark = match suf {
                "" => Mark::Plain,
                "o" => Mark::Over,
                "u" => Mark::Under,
                "b" => Mark::Both,
                _ => return Err(SparError::Parse(tok.to_string())),
            };
            parts.push(Part::new(value, mark));
        }
        SuperPartition::new(parts)
    }
}

/// Outcome of comparing two superpartitions in the weight order.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum WeightOrder {
    Greater,
    Less,
    /// Identical partial sums (includes equal superpartitions).
    EqualPrefixSums,
    Incomparable,
}

/// Dominance on partial sums of weights, shorter sequences padded by
/// their total.
pub fn weight_compare(a: &SuperPartition, b: &SuperPartition) -> WeightOrder {
    let (pa, pb) = (a.prefix_weights2(), b.prefix_weights2());
    let (ta, tb) = (
        pa.last().copied().unwrap_or(0),
        pb.last().copied().unwrap_or(0),
    );
    if ta != tb {
        return WeightOrder::Incomparable;
    }
    let (mut ge, mut le) = (true, true);
    for k in 0..pa.len().max(pb.len()) {
        let x = pa.get(k).copied().unwrap_or(ta);
        let y = pb.get(k).copied().unwrap_or(tb);
        ge &= x >= y;
        le &= x <= y;
    }
    match (ge, le) {
        (true, true) => WeightOrder::EqualPrefixSums,
        (true, false) => WeightOrder::Greater,
        (false, true) => WeightOrder::Less,
        (false, false) => WeightOrder::Incomparable,
    }
}

/// Total order refining the weight order: partial sums compared
/// lexicographically, then the parts themselves. `Greater` means earlier
/// in [`enumerate_sector`].
pub fn compare(a: &SuperPartition, b: &SuperPartition) -> Ordering {
    let (pa, pb) = (a.prefix_weights2(), b.prefix_weights2());
    let (ta, tb) = (
        pa.last().copied().unwrap_or(0),
        pb.last().copied().unwrap_or(0),
    );
    ta.cmp(&tb)
        .then_with(|| {
            for k in 0..pa.len().max(pb.len()) {
                let x = pa.get(k).copied().unwrap_or(ta);
                let y = pb.get(k).copied().unwrap_or(tb);
                if x != y {
                    return x.cmp(&y);
                }
            }
            Ordering::Equal
        })
        .then_with(|| a.parts.cmp(&b.parts))
}

/// Sets of `count` distinct values (strictly decreasing) with sum `<= budget`.
fn distinct_sets(count: usize, budget: u32) -> Vec<Vec<u32>> {
    fn go(count: u32, budget: u32, hi: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if count == 0 {
            out.push(cur.clone());
            return;
        }
        // smallest possible sum of the remaining count - 1 values
        let rest = (count - 1) * count.saturating_sub(2) / 2;
        for v in (count - 1..=hi).rev() {
            if v + rest > budget {
                continue;
            }
            cur.push(v);
            go(count - 1, budget - v, v.saturating_sub(1), cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(count as u32, budget, budget, &mut Vec::new(), &mut out);
    out
}

/// Multisets of `count` values (weakly decreasing) with sum `<= budget`.
fn multisets(count: usize, budget: u32, min: u32) -> Vec<Vec<u32>> {
    fn go(count: usize, budget: u32, cap: u32, min: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if count == 0 {
            out.push(cur.clone());
            return;
        }
        let mut v = cap.min(budget);
        loop {
            if v < min {
                break;
            }
            if (count as u32 - 1) * min + v <= budget {
                cur.push(v);
                go(count - 1, budget - v, v, min, cur, out);
                cur.pop();
            }
            if v == 0 {
                break;
            }
            v -= 1;
        }
    }
    let mut out = Vec::new();
    go(count, budget, budget, min, &mut Vec::new(), &mut out);
    out
}

/// Ordinary partitions of `n` (positive parts).
pub fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for v in (1..=cap.min(n)).rev() {
            cur.push(v);
            go(n - v, v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// All superpartitions of a sector, greatest first under [`compare`].
pub fn enumerate_sector(s: Sector) -> Vec<SuperPartition> {
    let mut out = Vec::new();
    for k in 0..=s.over.min(s.under) {
        let (a, b) = ((s.over - k) as usize, (s.under - k) as usize);
        for bi in multisets(k as usize, s.n, 0) {
            let r1 = s.n - bi.iter().sum::<u32>();
            for ov in distinct_sets(a, r1) {
                let r2 = r1 - ov.iter().sum::<u32>();
                for un in distinct_sets(b, r2) {
                    let r3 = r2 - un.iter().sum::<u32>();
                    for pl in partitions(r3) {
                        let mut parts = Vec::new();
                        parts.extend(bi.iter().map(|&v| Part::new(v, Mark::Both)));
                        parts.extend(ov.iter().map(|&v| Part::new(v, Mark::Over)));
                        parts.extend(un.iter().map(|&v| Part::new(v, Mark::Under)));
                        parts.extend(pl.iter().map(|&v| Part::plain(v)));
                        out.push(SuperPartition::new(parts).expect("distinct by construction"));
                    }
                }
            }
        }
    }
    out.sort_by(|x, y| compare(y, x));
    out
}

/// Sector sizes read off the product
/// `prod_{k>=0} (1 + x q^k)(1 + y q^k) / ((1 - x y q^k)(1 - q^{k+1}))`,
/// with `x` counting over fermions and `y` under fermions.
#[derive(Clone, Debug)]
pub struct SectorCounts {
    max_n: usize,
    max_over: usize,
    max_under: usize,
    data: Vec<u128>,
}

impl SectorCounts {
    pub fn get(&self, n: u32, over: u32, under: u32) -> u128 {
        let (n, a, b) = (n as usize, over as usize, under as usize);
        assert!(n <= self.max_n && a <= self.max_over && b <= self.max_under);
        self.data[self.idx(n, a, b)]
    }

    fn idx(&self, n: usize, a: usize, b: usize) -> usize {
        (n * (self.max_over + 1) + a) * (self.max_under + 1) + b
    }
}

/// Truncated expansion of the counting product.
pub fn count_sector_series(max_n: u32, max_over: u32, max_under: u32) -> SectorCounts {
    let (nn, na, nb) = (max_n as usize, max_over as usize, max_under as usize);
    let mut c = SectorCounts {
        max_n: nn,
        max_over: na,
        max_under: nb,
        data: vec![0; (nn + 1) * (na + 1) * (nb + 1)],
    };
    let i0 = c.idx(0, 0, 0);
    c.data[i0] = 1;
    for k in 0..=nn {
        // (1 + x q^k): descending so each fermion is used once
        for (da, db) in [(1, 0), (0, 1)] {
            for n in (k..=nn).rev() {
                for a in (da..=na).rev() {
                    for b in (db..=nb).rev() {
                        let add = c.data[c.idx(n - k, a - da, b - db)];
                        let i = c.idx(n, a, b);
                        c.data[i] += add;
                    }
                }
            }
        }
        // 1 / (1 - x y q^k): ascending, repeats allowed
        for n in k..=nn {
            for a in 1..=na {
                for b in 1..=nb {
                    let add = c.data[c.idx(n - k, a - 1, b - 1)];
                    let i = c.idx(n, a, b);
                    c.data[i] += add;
                }
            }
        }
        // 1 / (1 - q^{k+1})
        for n in k + 1..=nn {
            for a in 0..=na {
                for b in 0..=nb {
                    let add = c.data[c.idx(n - k - 1, a, b)];
                    let i = c.idx(n, a, b);
                    c.data[i] += add;
                }
            }
        }
    }
    c
}

/// Convenience: parse, panicking on bad input. Intended for tests and
/// literals.
pub fn sp(s: &str) -> SuperPartition {
    s.parse().unwrap_or_else(|e| panic!("{s}: {e}"))
}

/// Sectors with `n <= max_n`, `over <= max_over`, `under <= max_under`.
pub fn sectors_up_to(max_n: u32, max_over: u32, max_under: u32) -> Vec<Sector> {
    let mut v = Vec::new();
    for n in 0..=max_n {
        for a in 0..=max_over {
            for b in 0..=max_under {
                v.push(Sector::new(n, a, b));
            }
        }
    }
    v
}

/// Multiplicities of equal parts, in stored order of first occurrence.
pub fn part_multiplicities(s: &SuperPartition) -> Vec<(Part, u32)> {
    let mut out: Vec<(Part, u32)> = Vec::new();
    for &p in s.parts() {
        match out.last_mut() {
            Some((q, c)) if *q == p => *c += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

impl From<SuperPartition> for Vec<Part> {
    fn from(s: SuperPartition) -> Self {
        s.parts
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let s = sp("[1o,2b,0u,0,0]");
        assert_eq!(s.to_string(), "[2b,1o,0u]");
        assert_eq!(s.sector(), Sector::new(3, 2, 2));
        assert_eq!(sp("[]"), SuperPartition::empty());
        assert_eq!("[2x]".parse::<SuperPartition>(), Err(SparError::Parse("2x".into())));
        assert!(matches!("[1o,1o]".parse::<SuperPartition>(), Err(SparError::NotDistinct(_))));
        // same value under and over is fine; two bilines too
        assert!("[1o,1u,1b,1b]".parse::<SuperPartition>().is_ok());
        assert!("[1o,1b]".parse::<SuperPartition>().is_ok());
        assert!("[1u,0,1u]".parse::<SuperPartition>().is_err());
    }

    #[test]
    fn canonical_order_within_equal_values() {
        assert_eq!(sp("[1,1u,1o,1b]").to_string(), "[1b,1o,1u,1]");
    }

    #[test]
    fn sector_211() {
        let got: Vec<String> = enumerate_sector(Sector::new(2, 1, 1))
            .iter()
            .map(|s| s.to_string())
            .collect();
        let mut want: Vec<String> = [
            "[2b]", "[2o,0u]", "[2u,0o]", "[2,0b]", "[2,0o,0u]", "[1b,1]", "[1o,1u]",
            "[1o,1,0u]", "[1u,1,0o]", "[1,1,0b]", "[1,1,0o,0u]",
        ]
        .iter()
        .map(|s| s.to_string())
        .collect();
        let mut g2 = got.clone();
        g2.sort();
        want.sort();
        assert_eq!(g2, want);
        assert_eq!(got[0], "[2b]");
        assert_eq!(got[10], "[1,1,0o,0u]");
    }

    #[test]
    fn series_low_orders() {
        let c = count_sector_series(2, 2, 2);
        // q^0: 1 + y + x + 2xy + xy^2 + x^2y + 2x^2y^2
        let q0 = [(0, 0, 1), (0, 1, 1), (1, 0, 1), (1, 1, 2), (1, 2, 1), (2, 1, 1), (2, 2, 2), (0, 2, 0), (2, 0, 0)];
        for (a, b, v) in q0 {
            assert_eq!(c.get(0, a, b), v, "q^0 x^{a} y^{b}");
        }
        // q^1: 1 + 2y + 2x + y^2 + 5xy + x^2 + 4xy^2 (+ x^2 y, x^2 y^2 by symmetry)
        for (a, b, v) in [(0, 0, 1), (0, 1, 2), (1, 0, 2), (0, 2, 1), (1, 1, 5), (2, 0, 1), (1, 2, 4), (2, 1, 4)] {
            assert_eq!(c.get(1, a, b), v, "q^1 x^{a} y^{b}");
        }
        for (a, b, v) in [(0, 0, 2), (0, 1, 4), (1, 0, 4), (0, 2, 2), (1, 1, 11), (2, 0, 2), (1, 2, 10), (2, 1, 10)] {
            assert_eq!(c.get(2, a, b), v, "q^2 x^{a} y^{b}");
        }
    }

    #[test]
    fn series_matches_enumeration() {
        let c = count_sector_series(6, 3, 3);
        for s in sectors_up_to(6, 3, 3) {
            assert_eq!(
                enumerate_sector(s).len() as u128,
                c.get(s.n, s.over, s.under),
                "{s}"
            );
        }
    }

    #[test]
    fn part_addition() {
        let a = sp("[3o,2b,2u,1,1,0o]");
        let b = sp("[1u,1,1,0o]");
        assert_eq!(a.add(&b), Some(sp("[4b,3b,3u,1o,1,0o]")));
        assert_eq!(sp("[1o,0u]").add(&sp("[1,0u]")), None);
        assert_eq!(Part::new(2, Mark::Both).add(Part::new(0, Mark::Over)), None);
        assert_eq!(Part::new(2, Mark::Over).add(Part::new(1, Mark::Under)), Some(Part::new(3, Mark::Both)));
    }

    #[test]
    fn weight_chain() {
        let chain = ["[2b]", "[2o,0u]", "[1u,1o]", "[1o,1,0o]", "[1,1,0b]", "[1,1,0u,0o]"];
        for w in chain.windows(2) {
            assert_eq!(weight_compare(&sp(w[0]), &sp(w[1])), WeightOrder::Greater, "{w:?}");
            assert_eq!(weight_compare(&sp(w[1]), &sp(w[0])), WeightOrder::Less);
        }
        assert_eq!(
            weight_compare(&sp("[2o,0u]"), &sp("[2u,0o]")),
            WeightOrder::EqualPrefixSums
        );
    }

    #[test]
    fn weight_totals() {
        for s in enumerate_sector(Sector::new(3, 2, 1)) {
            assert_eq!(s.weight2(), 2 * 3 + 3);
        }
    }

    #[test]
    fn insertion() {
        assert_eq!(sp("[4o,2]").insert_part(Part::new(2, Mark::Both)), Ok(sp("[4o,2b,2]")));
        assert_eq!(
            sp("[2o,1u]").insert_part(Part::new(1, Mark::Under)),
            Err(SparError::OrderViolation(Part::new(1, Mark::Under)))
        );
    }

    #[test]
    fn compare_refines_weight_order() {
        let all = enumerate_sector(Sector::new(4, 2, 2));
        for (i, a) in all.iter().enumerate() {
            for b in &all[i + 1..] {
                assert_eq!(compare(a, b), Ordering::Greater);
                assert_ne!(weight_compare(a, b), WeightOrder::Less, "{a} {b}");
            }
        }
    }
}
