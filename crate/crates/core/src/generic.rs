//! Superpartitions and symmetric superfunctions with any number `𝒩` of
//! anticommuting families.
//!
//! A part carries a content `T ⊆ {1..𝒩}` stored as a bitmask (bit `t-1` for
//! type `t`). In explicit variables, type `t` lives in slot `𝒩 - t`, so a
//! word `θ_i^{(t_1)} ⋯ θ_i^{(t_m)}` with `t_1 > ⋯ > t_m` is already in
//! generator order. With `𝒩 = 2`, type 2 is the over family (`φ`) and type
//! 1 the under family (`θ`), which makes the part order agree with the
//! two-family one.
//!
//! No product rule is used here: every abstract quantity is read off
//! explicit polynomials.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use num_traits::{One, Zero};

use crate::bases::{self, z_norm, zeta_norm};
use crate::grassmann::{
    complete_explicit, elementary_explicit, power_sum_explicit, symmetric_monomial, ExplicitPoly,
    GMonomial, VarConfig,
};
use crate::report::Report;
use crate::scalar::{int, Rational, Scalar};
use crate::spar::{Mark, Part, Sector, SuperPartition};
use crate::transforms::{Algebra, Matrix};

/// Part `a^{T}`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct NPart {
    pub value: u32,
    pub content: u32,
}

impl NPart {
    pub fn new(value: u32, types: &[u32]) -> Self {
        NPart {
            value,
            content: types.iter().fold(0, |c, &t| c | 1 << (t - 1)),
        }
    }

    /// Fermionic degree `m`.
    pub fn degree(self) -> u32 {
        self.content.count_ones()
    }

    /// Types in decreasing order.
    pub fn types(self) -> Vec<u32> {
        (1..=32).rev().filter(|t| self.content >> (t - 1) & 1 == 1).collect()
    }

    /// `Greater` when `self` appears before `o`: larger value, then larger
    /// degree, then the first differing type (contents read decreasingly).
    pub fn order(self, o: NPart) -> Ordering {
        self.value
            .cmp(&o.value)
            .then(self.degree().cmp(&o.degree()))
            .then_with(|| self.types().cmp(&o.types()))
    }
}

impl fmt::Display for NPart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)?;
        if self.content != 0 {
            let t: Vec<String> = self.types().iter().map(|t| t.to_string()).collect();
            write!(f, "^{{{}}}", t.join(","))?;
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum NSparError {
    /// An odd-degree part is repeated.
    Repeated(NPart),
    /// A type outside `1..=𝒩`.
    TypeOutOfRange(u32),
    Parse(String),
}

impl fmt::Display for NSparError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NSparError::Repeated(p) => write!(f, "part {p} has odd degree and is repeated"),
            NSparError::TypeOutOfRange(t) => write!(f, "type {t} out of range"),
            NSparError::Parse(s) => write!(f, "cannot parse {s:?}"),
        }
    }
}

/// Superpartition with `n_types` families, parts in canonical order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct NSuperPartition {
    n_types: u32,
    parts: Vec<NPart>,
}

impl NSuperPartition {
    pub fn new(n_types: u32, mut parts: Vec<NPart>) -> Result<Self, NSparError> {
        for p in &parts {
            if p.content >> n_types != 0 {
                return Err(NSparError::TypeOutOfRange(32 - p.content.leading_zeros()));
            }
        }
        parts.retain(|p| p.value != 0 || p.content != 0);
        parts.sort_by(|a, b| b.order(*a));
        for w in parts.windows(2) {
            if w[0] == w[1] && w[0].degree() % 2 == 1 {
                return Err(NSparError::Repeated(w[0]));
            }
        }
        Ok(NSuperPartition { n_types, parts })
    }

    pub fn n_types(&self) -> u32 {
        self.n_types
    }

    pub fn parts(&self) -> &[NPart] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `|Λ|`.
    pub fn size(&self) -> u32 {
        self.parts.iter().map(|p| p.value).sum()
    }

    /// `M(Λ)`.
    pub fn fermionic_degree(&self) -> u32 {
        self.parts.iter().map(|p| p.degree()).sum()
    }

    pub fn sector(&self) -> NSector {
        let mut degrees = vec![0; self.n_types as usize];
        for p in &self.parts {
            for t in p.types() {
                degrees[t as usize - 1] += 1;
            }
        }
        NSector {
            n: self.size(),
            degrees,
        }
    }

    /// Constituent partitions, keyed by content.
    pub fn constituents(&self) -> BTreeMap<u32, Vec<u32>> {
        let mut c: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
        for p in &self.parts {
            c.entry(p.content).or_default().push(p.value);
        }
        c
    }

    /// The `(value, slot set)` list for explicit monomials.
    pub fn slot_parts(&self) -> Vec<(u32, u64)> {
        self.parts
            .iter()
            .map(|p| (p.value, content_slots(p.content, self.n_types)))
            .collect()
    }
}

impl fmt::Display for NSuperPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

/// Parses `[5^{2,1},4,0^{6,1}]` (or with parentheses); the number of types
/// is the largest type mentioned unless given by [`parse_with_types`].
impl FromStr for NSuperPartition {
    type Err = NSparError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts = parse_parts(s)?;
        let n = parts.iter().map(|p| 32 - p.content.leading_zeros()).max().unwrap_or(0);
        NSuperPartition::new(n, parts)
    }
}

/// Parses with an explicit `𝒩`.
pub fn parse_with_types(s: &str, n_types: u32) -> Result<NSuperPartition, NSparError> {
    NSuperPartition::new(n_types, parse_parts(s)?)
}

fn parse_parts(s: &str) -> Result<Vec<NPart>, NSparError> {
    let err = |t: &str| NSparError::Parse(t.to_string());
    let t = s.trim();
    let inner = t
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .or_else(|| t.strip_prefix('(').and_then(|r| r.strip_suffix(')')))
        .ok_or_else(|| err(t))?
        .trim();
    if inner.is_empty() {
        return Ok(Vec::new());
    }
    let mut items = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, ch) in inner.char_indices() {
        match ch {
            '{' => depth += 1,
            '}' => depth -= 1,
            ',' if depth == 0 => {
                items.push(&inner[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    items.push(&inner[start..]);
    items
        .into_iter()
        .map(|it| {
            let it = it.trim();
            let (v, types) = match it.split_once('^') {
                None => (it, ""),
                Some((v, rest)) => {
                    let body = rest
                        .trim()
                        .strip_prefix('{')
                        .and_then(|r| r.strip_suffix('}'))
                        .ok_or_else(|| err(it))?;
                    (v, body)
                }
            };
            let value = v.trim().parse::<u32>().map_err(|_| err(it))?;
            let mut content = 0u32;
            for t in types.split(',').map(str::trim).filter(|x| !x.is_empty()) {
                let t: u32 = t.parse().map_err(|_| err(it))?;
                if t == 0 || t > 32 || content >> (t - 1) & 1 == 1 {
                    return Err(err(it));
                }
                content |= 1 << (t - 1);
            }
            Ok(NPart { value, content })
        })
        .collect()
}

/// Slot mask of a content in an alphabet with `n_types` families.
pub fn content_slots(content: u32, n_types: u32) -> u64 {
    (1..=n_types)
        .filter(|t| content >> (t - 1) & 1 == 1)
        .fold(0, |m, t| m | 1 << (n_types - t))
}

/// Total value and, per type, the number of parts containing it.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct NSector {
    pub n: u32,
    pub degrees: Vec<u32>,
}

impl NSector {
    pub fn new(n: u32, degrees: Vec<u32>) -> Self {
        NSector { n, degrees }
    }

    pub fn n_types(&self) -> u32 {
        self.degrees.len() as u32
    }

    pub fn fermionic_degree(&self) -> u32 {
        self.degrees.iter().sum()
    }

    pub fn max_length(&self) -> usize {
        n_enumerate(self).iter().map(|s| s.len()).max().unwrap_or(0)
    }
}

impl fmt::Display for NSector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d: Vec<String> = self.degrees.iter().map(|d| d.to_string()).collect();
        write!(f, "({}|{})", self.n, d.join(","))
    }
}

/// Every superpartition of a sector, in lexicographic order of canonical
/// part sequences (largest first).
pub fn n_enumerate(s: &NSector) -> Vec<NSuperPartition> {
    let nt = s.n_types();
    let mut cands: Vec<NPart> = Vec::new();
    for v in 0..=s.n {
        for c in 0..1u32 << nt {
            if v > 0 || c != 0 {
                cands.push(NPart { value: v, content: c });
            }
        }
    }
    cands.sort_by(|a, b| b.order(*a));
    fn go(
        cands: &[NPart],
        from: usize,
        n_left: u32,
        deg_left: &mut Vec<u32>,
        cur: &mut Vec<NPart>,
        nt: u32,
        out: &mut Vec<NSuperPartition>,
    ) {
        if n_left == 0 && deg_left.iter().all(|&d| d == 0) {
            out.push(NSuperPartition {
                n_types: nt,
                parts: cur.clone(),
            });
        }
        for i in from..cands.len() {
            let p = cands[i];
            if p.value > n_left {
                continue;
            }
            let ok = (0..nt).all(|t| p.content >> t & 1 == 0 || deg_left[t as usize] > 0);
            if !ok {
                continue;
            }
            for t in 0..nt {
                if p.content >> t & 1 == 1 {
                    deg_left[t as usize] -= 1;
                }
            }
            cur.push(p);
            let next = if p.degree() % 2 == 1 { i + 1 } else { i };
            go(cands, next, n_left - p.value, deg_left, cur, nt, out);
            cur.pop();
            for t in 0..nt {
                if p.content >> t & 1 == 1 {
                    deg_left[t as usize] += 1;
                }
            }
        }
    }
    let mut out = Vec::new();
    go(&cands, 0, s.n, &mut s.degrees.clone(), &mut Vec::new(), nt, &mut out);
    out
}

/// Sector sizes from
/// `Π_k 1/(1 - q^{k+1}) Π_{T odd} (1 + u_T q^k) / Π_{T even} (1 - u_T q^k)`,
/// truncated at `q^max_n` and `u_t^max_degree`.
pub fn n_count_series(n_types: u32, max_n: u32, max_degree: u32) -> BTreeMap<NSector, u128> {
    type Key = (u32, Vec<u32>);
    let fits = |k: &Key| k.0 <= max_n && k.1.iter().all(|&d| d <= max_degree);
    let mut series: BTreeMap<Key, u128> = BTreeMap::new();
    series.insert((0, vec![0; n_types as usize]), 1);
    let shift = |k: &Key, q: u32, c: u32| -> Key {
        let mut d = k.1.clone();
        for t in 0..n_types {
            d[t as usize] += c >> t & 1;
        }
        (k.0 + q, d)
    };
    for k in 0..=max_n {
        for c in 0..1u32 << n_types {
            let (q, repeat) = if c == 0 {
                (k + 1, true)
            } else {
                (k, c.count_ones() % 2 == 0)
            };
            if c == 0 && q > max_n {
                continue;
            }
            let mut next = series.clone();
            if repeat {
                // geometric series: add u^j q^{jk} for j = 1, 2, ... until
                // nothing fits
                let mut work = next;
                let mut frontier: Vec<(Key, u128)> = series.iter().map(|(k, v)| (k.clone(), *v)).collect();
                loop {
                    let mut fresh = Vec::new();
                    for (key, v) in frontier {
                        let nk = shift(&key, q, c);
                        if fits(&nk) {
                            *work.entry(nk.clone()).or_insert(0) += v;
                            fresh.push((nk, v));
                        }
                    }
                    if fresh.is_empty() {
                        break;
                    }
                    frontier = fresh;
                }
                next = work;
            } else {
                for (key, v) in &series {
                    let nk = shift(key, q, c);
                    if fits(&nk) {
                        *next.entry(nk).or_insert(0) += v;
                    }
                }
            }
            series = next;
        }
    }
    series
        .into_iter()
        .map(|((n, d), v)| (NSector::new(n, d), v))
        .collect()
}

fn factorial(n: u32) -> Rational {
    int((1..=n as i64).product())
}

/// `z^{(m)}_λ = Π_k n_λ(k)! (k!/(k+m-1)!)^{n_λ(k)}`.
pub fn z_constituent(lambda: &[u32], m: u32) -> Rational {
    let mut counts: BTreeMap<u32, u32> = BTreeMap::new();
    for &k in lambda {
        *counts.entry(k).or_insert(0) += 1;
    }
    let mut z = int(1);
    for (k, c) in counts {
        // k!/(k+m-1)!, with m = 0 giving k
        let ratio = if m == 0 {
            int(k as i64)
        } else {
            factorial(k) / factorial(k + m - 1)
        };
        z *= factorial(c) * ratio.pow(c as i32);
    }
    z
}

/// `z_Λ`, the product over constituent partitions.
pub fn n_norm(lam: &NSuperPartition) -> Rational {
    lam.constituents()
        .iter()
        .map(|(&c, vals)| z_constituent(vals, c.count_ones()))
        .fold(int(1), |a, b| a * b)
}

/// Whether `p_Λ^⊤ = -p_Λ`, i.e. `binom(M, 2)` is odd.
pub fn n_top_sign_negative(lam: &NSuperPartition) -> bool {
    let m = lam.fermionic_degree() as u64;
    (m * m.saturating_sub(1) / 2) % 2 == 1
}

// ---------------------------------------------------------------------
// explicit bases

pub fn n_config(n_vars: usize, n_types: u32) -> VarConfig {
    VarConfig::new(n_vars, n_types as usize)
}

/// `m_Λ` in explicit variables.
pub fn n_monomial<F: Scalar>(lam: &NSuperPartition, cfg: VarConfig) -> ExplicitPoly<F> {
    symmetric_monomial(cfg, &lam.slot_parts())
}

/// `d^{(t)} = Σ_i θ_i^{(t)} ∂/∂x_i`.
pub fn n_derivative<F: Scalar>(f: &ExplicitPoly<F>, t: u32) -> ExplicitPoly<F> {
    let nt = f.config().families as u32;
    f.exterior_d((nt - t) as usize)
}

/// `d^{T}` with the largest type outermost, so the generators come out in
/// decreasing type order.
pub fn n_apply_content<F: Scalar>(f: &ExplicitPoly<F>, content: u32) -> ExplicitPoly<F> {
    let mut r = f.clone();
    let mut types = NPart { value: 0, content }.types();
    types.reverse();
    for t in types {
        r = n_derivative(&r, t);
    }
    r
}

/// `p_n^{T} = Σ_i θ_i^{T} x_i^n`.
pub fn n_power_sum<F: Scalar>(part: NPart, cfg: VarConfig) -> ExplicitPoly<F> {
    power_sum_explicit(part.value, content_slots(part.content, cfg.families as u32), cfg)
}

/// `n!/(n+m)! d^{T} p_{n+m}`, the power sum through derivatives.
pub fn n_power_sum_by_derivative(part: NPart, cfg: VarConfig) -> ExplicitPoly<Rational> {
    let (n, m) = (part.value, part.degree());
    let base = power_sum_explicit::<Rational>(n + m, 0, cfg);
    n_apply_content(&base, part.content).scale(&(factorial(n) / factorial(n + m)))
}

/// `h_n^{T} = d^{T} h_{n+m}`.
pub fn n_complete<F: Scalar>(part: NPart, cfg: VarConfig) -> ExplicitPoly<F> {
    n_apply_content(&complete_explicit(part.value + part.degree(), cfg), part.content)
}

/// `e_n^{T} = d^{T} e_{n+m}`.
pub fn n_elementary<F: Scalar>(part: NPart, cfg: VarConfig) -> ExplicitPoly<F> {
    n_apply_content(&elementary_explicit(part.value + part.degree(), cfg), part.content)
}

/// Which multiplicative family to build explicitly.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum NBasis {
    P,
    H,
    E,
}

/// Sector of an explicit monomial.
pub fn n_monomial_sector(m: &GMonomial, cfg: &VarConfig) -> NSector {
    let nt = cfg.families as u32;
    let degrees = (1..=nt)
        .map(|t| m.slot_count(cfg, (nt - t) as usize))
        .collect();
    NSector::new(m.degree(), degrees)
}

/// `f_Λ` as the ordered product of explicit generators, keeping only the
/// monomials of `s`.
pub fn n_multiplicative<F: Scalar>(basis: NBasis, lam: &NSuperPartition, cfg: VarConfig) -> ExplicitPoly<F> {
    let s = lam.sector();
    let nt = cfg.families as u32;
    let keep = |m: &GMonomial| {
        m.degree() <= s.n && (1..=nt).all(|t| m.slot_count(&cfg, (nt - t) as usize) <= s.degrees[t as usize - 1])
    };
    lam.parts().iter().fold(ExplicitPoly::one(cfg), |acc, &p| {
        let g = match basis {
            NBasis::P => n_power_sum(p, cfg),
            NBasis::H => n_complete(p, cfg),
            NBasis::E => n_elementary(p, cfg),
        };
        acc.mul_filtered(&g, keep)
    })
}

/// Monomial coefficients of `f` on a sector, aligned with `order`; fails
/// when the alphabet is too short or the recombination differs.
pub fn n_extract<F: Scalar>(
    f: &ExplicitPoly<F>,
    s: &NSector,
    order: &[NSuperPartition],
) -> Result<Vec<F>, String> {
    let cfg = f.config();
    let needed = order.iter().map(|l| l.len()).max().unwrap_or(0);
    if cfg.n_vars < needed {
        return Err(format!("need {needed} variables, have {}", cfg.n_vars));
    }
    let part = f.filter(|m| n_monomial_sector(m, &cfg) == *s);
    let mut coeffs = Vec::with_capacity(order.len());
    let mut rebuilt = ExplicitPoly::zero(cfg);
    for lam in order {
        let lead = crate::grassmann::leading_monomial(&lam.slot_parts(), &cfg);
        let c = part.coeff(&lead);
        if !c.is_zero() {
            rebuilt = rebuilt.add(&n_monomial::<F>(lam, cfg).scale(&c));
        }
        coeffs.push(c);
    }
    if rebuilt != part {
        return Err("not symmetric on the sector".into());
    }
    Ok(coeffs)
}

/// `M(basis, m)` on a sector, rows read off explicit products.
pub fn n_transition_to_m(basis: NBasis, s: &NSector) -> Result<(Vec<NSuperPartition>, Matrix<Rational>), String> {
    let order = n_enumerate(s);
    let cfg = n_config(s.max_length().max(1), s.n_types());
    let mut mat = Matrix::zeros(order.len(), order.len());
    for (i, lam) in order.iter().enumerate() {
        let row = n_extract(&n_multiplicative::<Rational>(basis, lam, cfg), s, &order)?;
        for (j, c) in row.into_iter().enumerate() {
            mat.set(i, j, c);
        }
    }
    Ok((order, mat))
}

/// `⟨m_Λ^⊤ | h_Ω⟩` on a sector.
pub fn n_gram(s: &NSector) -> Result<(Vec<NSuperPartition>, Matrix<Rational>), String> {
    let (order, pm) = n_transition_to_m(NBasis::P, s)?;
    let (_, hm) = n_transition_to_m(NBasis::H, s)?;
    let mp = pm.inverse().ok_or("M(p,m) is singular")?;
    let hp = hm.mul(&mp);
    let w: Vec<Rational> = order.iter().map(n_norm).collect();
    let d = order.len();
    let mut g = Matrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            let mut acc = Rational::zero();
            for (k, wk) in w.iter().enumerate() {
                acc += mp.get(i, k) * hp.get(j, k) * wk;
            }
            g.set(i, j, acc);
        }
    }
    Ok((order, g))
}

/// Sectors with `|Λ| <= max_n` and total fermionic degree at most
/// `max_fermions`.
pub fn n_sectors(n_types: u32, max_n: u32, max_fermions: u32) -> Vec<NSector> {
    let mut degs: Vec<Vec<u32>> = vec![Vec::new()];
    for _ in 0..n_types {
        let mut next = Vec::new();
        for d in &degs {
            let used: u32 = d.iter().sum();
            for k in 0..=max_fermions - used {
                let mut e = d.clone();
                e.push(k);
                next.push(e);
            }
        }
        degs = next;
    }
    let mut out = Vec::new();
    for n in 0..=max_n {
        for d in &degs {
            out.push(NSector::new(n, d.clone()));
        }
    }
    out
}

// ---------------------------------------------------------------------
// checks

/// Gram of `m` against `h` is the identity.
pub fn n_duality(s: &NSector) -> Report {
    let mut r = Report::new("generic duality m/h", s);
    match n_gram(s) {
        Ok((order, g)) => {
            for (i, l) in order.iter().enumerate() {
                for (j, o) in order.iter().enumerate() {
                    let want = if i == j { int(1) } else { int(0) };
                    r.expect_eq(format!("<m{l}|h{o}>"), g.get(i, j), &want);
                }
            }
        }
        Err(e) => r.fail("gram", e, "identity"),
    }
    r
}

/// `Π_{i,j} 1/(1 - x_i y_j - Σ_t θ_i^{(t)} φ_j^{(t)})` against
/// `Σ_Λ z_Λ^{-1} (-1)^{binom(M,2)} p_Λ(x,θ) p_Λ(y,φ)`, for `x` degree at most
/// `max_degree` and at most `max_fermions` fermions on the `x` side.
pub fn n_kernel(n_types: u32, n: usize, max_degree: u32, max_fermions: u32) -> Report {
    let mut r = Report::new(
        format!("generic kernel N={n_types}"),
        format!("deg<={max_degree},M<={max_fermions},vars={n}+{n}"),
    );
    let cfg = n_config(2 * n, n_types);
    let side = n_config(n, n_types);
    let x_fermions: u64 = (0..n_types as usize).fold(0, |m, s| m | side.slot_mask(s));
    let keep = |m: &GMonomial| {
        m.x[..n].iter().sum::<u32>() <= max_degree && (m.fermions & x_fermions).count_ones() <= max_fermions
    };
    let top = (max_degree + max_fermions) as usize;
    let mut lhs = ExplicitPoly::<Rational>::one(cfg);
    for i in 0..n {
        for j in 0..n {
            let y = n + j;
            let mut u = ExplicitPoly::x(cfg, i).mul(&ExplicitPoly::x(cfg, y));
            for s in 0..n_types as usize {
                u = u.add(&ExplicitPoly::fermion(cfg, i, s).mul(&ExplicitPoly::fermion(cfg, y, s)));
            }
            let mut pow = ExplicitPoly::one(cfg);
            let mut series = ExplicitPoly::zero(cfg);
            for _ in 0..=top {
                series = series.add(&pow);
                pow = pow.mul_filtered(&u, keep);
            }
            lhs = lhs.mul_filtered(&series, keep);
        }
    }
    let mut rhs = ExplicitPoly::zero(cfg);
    for s in n_sectors(n_types, max_degree, max_fermions) {
        for lam in n_enumerate(&s) {
            let p = lam
                .parts()
                .iter()
                .fold(ExplicitPoly::<Rational>::one(side), |a, &q| a.mul(&n_power_sum(q, side)));
            let mut c = Rational::one() / n_norm(&lam);
            if n_top_sign_negative(&lam) {
                c = -c;
            }
            rhs = rhs.add(&p.embed(2 * n, 0).mul_filtered(&p.embed(2 * n, n), keep).scale(&c));
        }
    }
    let diff = lhs.sub(&rhs);
    for (m, _) in diff.terms().iter().take(8) {
        let mut unit = ExplicitPoly::<Rational>::zero(cfg);
        unit.add_term(m.clone(), int(1));
        r.fail(format!("coefficient {unit}"), lhs.coeff(m), rhs.coeff(m));
    }
    r
}

/// The two-family superpartition with the same parts (type 2 over, type 1
/// under).
pub fn to_two_family(lam: &NSuperPartition) -> Option<SuperPartition> {
    if lam.n_types() != 2 {
        return None;
    }
    let parts: Vec<Part> = lam
        .parts()
        .iter()
        .map(|p| Part::new(p.value, Mark::from_flags(p.content & 2 != 0, p.content & 1 != 0)))
        .collect();
    SuperPartition::new(parts).ok()
}

/// Inverse of [`to_two_family`].
pub fn from_two_family(sp: &SuperPartition) -> NSuperPartition {
    let parts = sp
        .parts()
        .iter()
        .map(|p| NPart {
            value: p.value,
            content: (p.mark.has_over() as u32) << 1 | p.mark.has_under() as u32,
        })
        .collect();
    NSuperPartition::new(2, parts).expect("two-family superpartitions are valid")
}

/// `𝒩 = 2` against the two-family pipeline on one sector: enumeration (with
/// part order), `M(p,m)` and `M(h,m)` entry by entry, and the norms.
pub fn specialization(alg: &Algebra<Rational>, s: Sector) -> Report {
    let mut r = Report::new("generic specialization N=2", s);
    let ns = NSector::new(s.n, vec![s.under, s.over]);
    let core = crate::spar::enumerate_sector(s);
    let gen = n_enumerate(&ns);
    let mut mapped = Vec::new();
    for l in &gen {
        match to_two_family(l) {
            Some(c) => {
                let same_order = c.parts().iter().zip(l.parts()).all(|(a, b)| a.value == b.value);
                if !same_order || from_two_family(&c) != *l {
                    r.fail(format!("order {l}"), &c, l);
                }
                mapped.push(c);
            }
            None => r.fail(format!("map {l}"), "invalid", l),
        }
    }
    let mut a = mapped.clone();
    a.sort();
    let mut b = core.clone();
    b.sort();
    if a != b {
        r.fail("enumeration", format!("{} generic", a.len()), format!("{} core", b.len()));
        return r;
    }
    for (basis, nb) in [(bases::Basis::P, NBasis::P), (bases::Basis::H, NBasis::H)] {
        let t = alg.to_m_matrix(s, basis);
        match n_transition_to_m(nb, &ns) {
            Ok((order, m)) => {
                for (i, l) in order.iter().enumerate() {
                    for (j, g) in order.iter().enumerate() {
                        let (cl, cg) = (to_two_family(l).unwrap(), to_two_family(g).unwrap());
                        let want = t.entry(&cl, &cg);
                        r.expect_eq(format!("M({},m) {cl} {cg}", basis.name()), m.get(i, j), &want);
                    }
                }
            }
            Err(e) => r.fail(format!("M({},m)", basis.name()), e, "matrix"),
        }
    }
    for l in &gen {
        let c = to_two_family(l).unwrap();
        r.expect_eq(format!("norm {c}"), &n_norm(l), &(z_norm(&c) * zeta_norm(&c)));
        let (x, y) = (n_top_sign_negative(l), c.sector().top_sign_negative());
        if x != y {
            r.fail(format!("top sign {c}"), x, y);
        }
    }
    r
}

/// `z^{(0)} = z` and `z^{(2)} = ζ` on constituents of the two-family norms,
/// over every superpartition of the given sectors.
pub fn norm_reductions(sectors: &[Sector]) -> Report {
    let mut r = Report::new("generic norm reductions", format!("{} sectors", sectors.len()));
    for &s in sectors {
        for c in crate::spar::enumerate_sector(s) {
            let plain = c.values_with(Mark::Plain);
            let both = c.values_with(Mark::Both);
            r.expect_eq(format!("z {c}"), &z_constituent(&plain, 0), &z_norm(&c));
            r.expect_eq(format!("zeta {c}"), &z_constituent(&both, 2), &zeta_norm(&c));
            for m in [Mark::Over, Mark::Under] {
                r.expect_eq(format!("odd {c} {}", m.name()), &z_constituent(&c.values_with(m), 1), &int(1));
            }
        }
    }
    r
}

/// The printed example with `𝒩 = 6`: canonical order, `|Λ| = 24` and
/// `M(Λ) = 27`.
pub fn printed_example() -> Report {
    let text = "(5^{2,1},4,3^{5,4,1},3^{4,1},2^{6,4,1},2^{6,3,2},2,1^{4,3,2,1},1^{4,3,2,1},1^{1},0^{5,2,1},0^{6,1})";
    let mut r = Report::new("generic printed example", "N=6");
    match parse_parts(text) {
        Ok(parts) => {
            let lam = NSuperPartition::new(6, parts.clone());
            match lam {
                Ok(lam) => {
                    if lam.parts() != parts.as_slice() {
                        r.fail("order", &lam, text);
                    }
                    r.expect_eq("size", &lam.size(), &24);
                    r.expect_eq("M", &lam.fermionic_degree(), &27);
                }
                Err(e) => r.fail("validate", e, text),
            }
        }
        Err(e) => r.fail("parse", e, text),
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::leading_monomial;
    use crate::spar::{count_sector_series, enumerate_sector, sectors_up_to};

    fn nsp(s: &str, n: u32) -> NSuperPartition {
        parse_with_types(s, n).unwrap()
    }

    #[test]
    fn parse_and_display() {
        let l = nsp("[0^{6,1},2,5^{2,1}]", 6);
        assert_eq!(l.to_string(), "[5^{2,1},2,0^{6,1}]");
        assert!(parse_with_types("[1^{1},1^{1}]", 2).is_err());
        assert!(parse_with_types("[1^{3}]", 2).is_err());
        assert!(parse_with_types("[1^{2,2}]", 2).is_err());
        assert!(parse_with_types("[0^{2,1},0^{2,1}]", 2).is_ok());
    }

    #[test]
    fn printed_example_passes() {
        assert!(printed_example().passed());
    }

    #[test]
    fn counts_match_series() {
        for nt in 1..=3u32 {
            let series = n_count_series(nt, 4, 2);
            for (s, c) in &series {
                assert_eq!(n_enumerate(s).len() as u128, *c, "{s}");
            }
        }
    }

    #[test]
    fn one_family_counts_are_distinct_parts_times_partitions() {
        // strict partitions of a into m parts >= 0, times partitions of n-a
        fn strict(a: u32, m: u32, max: i64) -> u128 {
            if m == 0 {
                return (a == 0) as u128;
            }
            (0..=a.min(max.max(0) as u32))
                .filter(|&v| (v as i64) <= max)
                .map(|v| strict(a - v, m - 1, v as i64 - 1))
                .sum()
        }
        for n in 0..=6 {
            for m in 0..=3 {
                let want: u128 = (0..=n)
                    .map(|a| strict(a, m, a as i64) * crate::spar::partitions(n - a).len() as u128)
                    .sum();
                let got = n_enumerate(&NSector::new(n, vec![m])).len() as u128;
                assert_eq!(got, want, "({n}|{m})");
            }
        }
    }

    #[test]
    fn two_family_enumeration_matches_core() {
        let counts = count_sector_series(5, 2, 2);
        for s in sectors_up_to(5, 2, 2) {
            let ns = NSector::new(s.n, vec![s.under, s.over]);
            assert_eq!(n_enumerate(&ns).len() as u128, counts.get(s.n, s.over, s.under));
            let mut a: Vec<SuperPartition> = n_enumerate(&ns).iter().map(|l| to_two_family(l).unwrap()).collect();
            let mut b = enumerate_sector(s);
            a.sort();
            b.sort();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn power_sums_two_ways() {
        let cfg = n_config(3, 3);
        for v in 0..=2 {
            for c in 0..8u32 {
                if v == 0 && c == 0 {
                    continue;
                }
                let p = NPart { value: v, content: c };
                assert_eq!(n_power_sum::<Rational>(p, cfg), n_power_sum_by_derivative(p, cfg), "{p}");
            }
        }
    }

    #[test]
    fn printed_monomial_leading_word() {
        let lam = nsp("[5^{6,2,1},3^{1},1^{5,3},1,0^{6,5}]", 6);
        let cfg = n_config(5, 6);
        let m = n_monomial::<Rational>(&lam, cfg);
        // θ1^(6)θ1^(2)θ1^(1) θ2^(1) θ3^(5)θ3^(3) θ5^(6)θ5^(5) x1^5 x2^3 x3 x4
        let mut word = 0u64;
        for (v, types) in [(0usize, &[6u32, 2, 1][..]), (1, &[1]), (2, &[5, 3]), (4, &[6, 5])] {
            for &t in types {
                word |= 1 << cfg.gen(v, (6 - t) as usize);
            }
        }
        let lead = GMonomial {
            x: vec![5, 3, 1, 1, 0],
            fermions: word,
        };
        assert_eq!(lead, leading_monomial(&lam.slot_parts(), &cfg));
        assert_eq!(m.coeff(&lead), int(1));
        assert!(m.is_symmetric());
    }

    #[test]
    fn norms() {
        assert_eq!(z_constituent(&[2, 2], 0), int(8));
        assert_eq!(z_constituent(&[1, 1], 2), crate::scalar::rat(1, 2));
        assert_eq!(z_constituent(&[3], 1), int(1));
        let sectors = sectors_up_to(4, 2, 2);
        assert!(norm_reductions(&sectors).passed());
    }

    #[test]
    fn small_duality_and_kernel() {
        assert!(n_duality(&NSector::new(0, vec![0, 0, 0])).passed());
        let r = n_duality(&NSector::new(1, vec![1, 1, 0]));
        assert!(r.passed(), "{r:?}");
        let r = n_kernel(2, 2, 1, 1);
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn specialization_small() {
        let alg = Algebra::new(int(1));
        for s in sectors_up_to(2, 1, 1) {
            let r = specialization(&alg, s);
            assert!(r.passed(), "{r:?}");
        }
    }
}
