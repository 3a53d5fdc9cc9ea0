//! Abstract symmetric polynomials in the five standard bases.
//!
//! `m` is the monomial basis. `p`, `h`, `e` and the Jack-type `g` are
//! multiplicative: `f_Λ = f̃_{Λ1} ⋯ f̃_{Λℓ}` where the generator `f̃_{Λi}` is
//! chosen by the mark of the part, and factors are taken in canonical part
//! order. Odd generators anticommute, so products in a multiplicative
//! basis only need a sort and a sign.
//!
//! The product of monomials uses the filled-diagram rule: rows of the two
//! diagrams are paired in every distinct way, the fermions on a row merge
//! (two of a kind annihilate), rows are re-sorted, and the sign is the
//! parity of the fermion labels read top to bottom.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::One;

use crate::scalar::{int, Rational, Scalar};
use crate::spar::{enumerate_sector, part_multiplicities, Mark, Part, Sector, SuperPartition};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Basis {
    M,
    P,
    H,
    E,
    G,
}

impl Basis {
    pub const ALL: [Basis; 5] = [Basis::M, Basis::P, Basis::H, Basis::E, Basis::G];

    pub fn name(self) -> &'static str {
        match self {
            Basis::M => "m",
            Basis::P => "p",
            Basis::H => "h",
            Basis::E => "e",
            Basis::G => "g",
        }
    }

    pub fn from_name(s: &str) -> Option<Basis> {
        Basis::ALL.into_iter().find(|b| b.name() == s)
    }

    pub fn is_multiplicative(self) -> bool {
        self != Basis::M
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Finite linear combination of basis elements.
#[derive(Clone, PartialEq, Debug)]
pub struct AbstractPoly<F> {
    basis: Basis,
    terms: BTreeMap<SuperPartition, F>,
}

impl<F: Scalar> AbstractPoly<F> {
    pub fn zero(basis: Basis) -> Self {
        AbstractPoly {
            basis,
            terms: BTreeMap::new(),
        }
    }

    pub fn single(basis: Basis, sp: SuperPartition, c: F) -> Self {
        let mut p = Self::zero(basis);
        p.add_term(sp, c);
        p
    }

    /// The unit, `f_∅`.
    pub fn one(basis: Basis) -> Self {
        Self::single(basis, SuperPartition::empty(), F::one())
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn terms(&self) -> &BTreeMap<SuperPartition, F> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, sp: &SuperPartition) -> F {
        self.terms.get(sp).cloned().unwrap_or_else(F::zero)
    }

    pub fn add_term(&mut self, sp: SuperPartition, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&sp) {
            Some(v) => {
                let s = v.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&sp);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(sp, c);
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.basis, o.basis, "adding polynomials in different bases");
        let mut r = self.clone();
        for (s, c) in &o.terms {
            r.add_term(s.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-F::one()))
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut r = Self::zero(self.basis);
        for (s, v) in &self.terms {
            r.add_term(s.clone(), v.clone() * c.clone());
        }
        r
    }

    /// Reinterprets the coefficients in another basis (no conversion).
    pub fn relabel(&self, basis: Basis) -> Self {
        AbstractPoly {
            basis,
            terms: self.terms.clone(),
        }
    }

    pub fn map_coeffs<G: Scalar>(&self, f: impl Fn(&F) -> G) -> AbstractPoly<G> {
        let mut r = AbstractPoly::zero(self.basis);
        for (s, c) in &self.terms {
            r.add_term(s.clone(), f(c));
        }
        r
    }

    /// Sectors present, sorted.
    pub fn sectors(&self) -> Vec<Sector> {
        let mut v: Vec<Sector> = self.terms.keys().map(|s| s.sector()).collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn sector_part(&self, s: Sector) -> Self {
        AbstractPoly {
            basis: self.basis,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.sector() == s)
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    /// `(-1)^(k(k-1)/2)` on each term, `k` the fermion count.
    pub fn top(&self) -> Self {
        let mut r = Self::zero(self.basis);
        for (s, c) in &self.terms {
            let neg = s.sector().top_sign_negative();
            r.add_term(s.clone(), if neg { -c.clone() } else { c.clone() });
        }
        r
    }
}

impl<F: Scalar> fmt::Display for AbstractPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (s, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c}){}{s}", self.basis)?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------
// products

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum Src {
    B,
    A,
}

/// One row of a filled diagram: boxes from each factor and the labels of
/// its circles. Labels number the circles of a factor in reading order.
#[derive(Clone, Copy, Debug)]
struct Row {
    a: u32,
    b: u32,
    over: Option<(Src, u16)>,
    under: Option<(Src, u16)>,
}

impl Row {
    fn part(&self) -> Part {
        Part::new(
            self.a + self.b,
            Mark::from_flags(self.over.is_some(), self.under.is_some()),
        )
    }

    /// Filling up to the numbering of labels.
    fn key(&self) -> (Part, u32, Option<Src>, Option<Src>) {
        (
            self.part(),
            self.a,
            self.over.map(|l| l.0),
            self.under.map(|l| l.0),
        )
    }

    fn merge(&self, o: &Row) -> Option<Row> {
        if (self.over.is_some() && o.over.is_some()) || (self.under.is_some() && o.under.is_some()) {
            return None;
        }
        Some(Row {
            a: self.a + o.a,
            b: self.b + o.b,
            over: self.over.or(o.over),
            under: self.under.or(o.under),
        })
    }
}

fn filled_rows(sp: &SuperPartition, src: Src, len: usize) -> Vec<Row> {
    let mut label = 0u16;
    let mut next = || {
        label += 1;
        (src, label - 1)
    };
    let mut rows: Vec<Row> = sp
        .parts()
        .iter()
        .map(|p| {
            let over = p.mark.has_over().then(&mut next);
            let under = p.mark.has_under().then(&mut next);
            let (a, b) = match src {
                Src::A => (p.value, 0),
                Src::B => (0, p.value),
            };
            Row { a, b, over, under }
        })
        .collect();
    rows.resize(
        len,
        Row {
            a: 0,
            b: 0,
            over: None,
            under: None,
        },
    );
    rows
}

/// Next lexicographic permutation in place; false when wrapped.
fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        v.reverse();
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

/// `m_Λ m_Ω` as integer coefficients on the monomial basis.
pub fn monomial_product(lam: &SuperPartition, om: &SuperPartition) -> BTreeMap<SuperPartition, i64> {
    let len = lam.len() + om.len();
    let k_a = lam.sector().fermions() as u16;
    let rows_a = filled_rows(lam, Src::A, len);
    let rows_b = filled_rows(om, Src::B, len);

    // classes of identical rows of Ω (identical up to labels)
    let mut classes: Vec<(Part, Vec<usize>)> = Vec::new();
    for (i, r) in rows_b.iter().enumerate() {
        let p = r.part();
        match classes.iter_mut().find(|(q, _)| *q == p) {
            Some((_, v)) => v.push(i),
            None => classes.push((p, vec![i])),
        }
    }
    let mut word: Vec<usize> = classes
        .iter()
        .enumerate()
        .flat_map(|(c, (_, v))| core::iter::repeat_n(c, v.len()))
        .collect();

    // filled diagram (sorted keys) -> (superpartition, sign)
    let mut seen: BTreeMap<Vec<(Part, u32, Option<Src>, Option<Src>)>, (SuperPartition, bool)> =
        BTreeMap::new();
    loop {
        let mut taken = vec![0usize; classes.len()];
        let mut rows = Vec::with_capacity(len);
        let mut ok = true;
        for (i, &c) in word.iter().enumerate() {
            let rb = &rows_b[classes[c].1[taken[c]]];
            taken[c] += 1;
            match rows_a[i].merge(rb) {
                Some(r) => {
                    if r.a + r.b > 0 || r.over.is_some() || r.under.is_some() {
                        rows.push(r);
                    }
                }
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            rows.sort_by(|x, y| y.key().cmp(&x.key()));
            let key: Vec<_> = rows.iter().map(|r| r.key()).collect();
            if !seen.contains_key(&key) {
                if let Ok(g) = SuperPartition::new(rows.iter().map(|r| r.part()).collect()) {
                    let mut seq = Vec::new();
                    for r in &rows {
                        for l in [r.over, r.under].into_iter().flatten() {
                            seq.push(match l.0 {
                                Src::A => l.1,
                                Src::B => k_a + l.1,
                            });
                        }
                    }
                    let mut inv = 0;
                    for i in 0..seq.len() {
                        for j in i + 1..seq.len() {
                            inv += (seq[i] > seq[j]) as u32;
                        }
                    }
                    seen.insert(key, (g, inv % 2 == 1));
                }
            }
        }
        if !next_permutation(&mut word) {
            break;
        }
    }

    let mut out: BTreeMap<SuperPartition, i64> = BTreeMap::new();
    for (key, (g, neg)) in seen {
        // orderings of equal rows that keep the superpartition sorted and
        // are distinguishable by their filling
        let mut mult = 1u64;
        let mut i = 0;
        while i < key.len() {
            let mut j = i;
            while j < key.len() && key[j].0 == key[i].0 {
                j += 1;
            }
            let mut denom = 1u64;
            let mut s = i;
            while s < j {
                let mut t = s;
                while t < j && key[t] == key[s] {
                    t += 1;
                }
                denom *= factorial((t - s) as u64);
                s = t;
            }
            mult *= factorial((j - i) as u64) / denom;
            i = j;
        }
        let v = if neg { -(mult as i64) } else { mult as i64 };
        let e = out.entry(g).or_insert(0);
        *e += v;
    }
    out.retain(|_, v| *v != 0);
    out
}

type ProductCache = BTreeMap<(SuperPartition, SuperPartition), Arc<BTreeMap<SuperPartition, i64>>>;

static PRODUCT_CACHE: spin::Mutex<ProductCache> = spin::Mutex::new(BTreeMap::new());

/// Memoised [`monomial_product`].
pub fn monomial_product_cached(lam: &SuperPartition, om: &SuperPartition) -> Arc<BTreeMap<SuperPartition, i64>> {
    let key = (lam.clone(), om.clone());
    if let Some(v) = PRODUCT_CACHE.lock().get(&key) {
        return v.clone();
    }
    let v = Arc::new(monomial_product(lam, om));
    PRODUCT_CACHE.lock().entry(key).or_insert(v).clone()
}

/// Product of two polynomials in the monomial basis.
pub fn mul_m<F: Scalar>(a: &AbstractPoly<F>, b: &AbstractPoly<F>) -> AbstractPoly<F> {
    assert!(a.basis == Basis::M && b.basis == Basis::M);
    let mut r = AbstractPoly::zero(Basis::M);
    for (sa, ca) in &a.terms {
        for (sb, cb) in &b.terms {
            let c = ca.clone() * cb.clone();
            for (g, k) in monomial_product_cached(sa, sb).iter() {
                r.add_term(g.clone(), c.clone() * F::from_int(*k));
            }
        }
    }
    r
}

/// `f_Λ f_Ω` in a multiplicative basis: the union with the sign of
/// sorting odd factors, or `None` if an odd factor repeats.
pub fn free_product(lam: &SuperPartition, om: &SuperPartition) -> Option<(SuperPartition, bool)> {
    let mut neg = false;
    for a in lam.parts().iter().filter(|p| p.mark.is_odd()) {
        for b in om.parts().iter().filter(|p| p.mark.is_odd()) {
            if a == b {
                return None;
            }
            neg ^= b > a;
        }
    }
    let mut parts: Vec<Part> = lam.parts().to_vec();
    parts.extend_from_slice(om.parts());
    Some((SuperPartition::new(parts).ok()?, neg))
}

/// Product of two polynomials in the same multiplicative basis.
pub fn mul_free<F: Scalar>(a: &AbstractPoly<F>, b: &AbstractPoly<F>) -> AbstractPoly<F> {
    assert_eq!(a.basis, b.basis);
    assert!(a.basis.is_multiplicative());
    let mut r = AbstractPoly::zero(a.basis);
    for (sa, ca) in &a.terms {
        for (sb, cb) in &b.terms {
            if let Some((g, neg)) = free_product(sa, sb) {
                let c = ca.clone() * cb.clone();
                r.add_term(g, if neg { -c } else { c });
            }
        }
    }
    r
}

/// Product in whichever basis both factors use.
pub fn mul<F: Scalar>(a: &AbstractPoly<F>, b: &AbstractPoly<F>) -> AbstractPoly<F> {
    if a.basis == Basis::M {
        mul_m(a, b)
    } else {
        mul_free(a, b)
    }
}

// ---------------------------------------------------------------------
// norms

/// `z_Λ = Π k^{n(k)} n(k)!` over the plain parts.
pub fn z_norm(sp: &SuperPartition) -> Rational {
    let mut z = int(1);
    for (p, c) in part_multiplicities(sp) {
        if p.mark == Mark::Plain {
            z *= int(p.value as i64).pow(c as i32) * int(factorial(c as u64) as i64);
        }
    }
    z
}

/// `ζ_Λ = Π n(k)! / (k+1)^{n(k)}` over the `b` parts.
pub fn zeta_norm(sp: &SuperPartition) -> Rational {
    let mut z = int(1);
    for (p, c) in part_multiplicities(sp) {
        if p.mark == Mark::Both {
            z *= int(factorial(c as u64) as i64) / int(p.value as i64 + 1).pow(c as i32);
        }
    }
    z
}

/// Exponent `|Λ| - ℓ(b parts) - ℓ(plain parts)` of the involution sign.
pub fn omega_exponent(sp: &SuperPartition) -> i64 {
    sp.size() as i64 - sp.count_mark(Mark::Both) as i64 - sp.count_mark(Mark::Plain) as i64
}

/// Sign picked up by `p_Λ` on a single variable when its fermions are
/// brought to kind order (all `φ` before all `θ`): odd when a `u` part
/// precedes an `o` part.
pub fn single_variable_sign(sp: &SuperPartition) -> bool {
    let mut unders = 0u32;
    let mut inv = 0u32;
    for p in sp.parts() {
        if p.mark.has_over() {
            inv += unders;
        }
        if p.mark.has_under() {
            unders += 1;
        }
    }
    inv % 2 == 1
}

/// `Π n(part)!` over distinct parts: the diagonal of `p` in `m`.
pub fn power_sum_diagonal(sp: &SuperPartition) -> i64 {
    part_multiplicities(sp)
        .iter()
        .map(|&(_, c)| factorial(c as u64) as i64)
        .product()
}

// ---------------------------------------------------------------------
// generators

/// Sector of the degree-`n` generator with a given mark.
pub fn generator_sector(mark: Mark, n: u32) -> Sector {
    Sector::new(n, mark.has_over() as u32, mark.has_under() as u32)
}

/// Superpartition indexing a single generator.
pub fn generator_index(mark: Mark, n: u32) -> SuperPartition {
    SuperPartition::new(vec![Part::new(n, mark)]).expect("single part")
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum BasisError {
    /// `p_0` with no fermion is not a generator.
    NoGenerator(Basis, Mark, u32),
    /// The basis has no generators (`m`).
    NotMultiplicative(Basis),
}

impl fmt::Display for BasisError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisError::NoGenerator(b, m, n) => write!(f, "no generator {b}_{n} with mark {}", m.name()),
            BasisError::NotMultiplicative(b) => write!(f, "basis {b} is not multiplicative"),
        }
    }
}

/// Closed monomial expansions of the generators of `p`, `h` and `e`.
pub fn generator_in_m<F: Scalar>(basis: Basis, mark: Mark, n: u32) -> Result<AbstractPoly<F>, BasisError> {
    let mut r = AbstractPoly::zero(Basis::M);
    match basis {
        Basis::P => {
            if mark == Mark::Plain && n == 0 {
                return Err(BasisError::NoGenerator(basis, mark, n));
            }
            r.add_term(generator_index(mark, n), F::one());
        }
        Basis::H => {
            for sp in enumerate_sector(generator_sector(mark, n)) {
                let c = complete_coefficient(&sp, mark);
                r.add_term(sp, F::from_int(c));
            }
        }
        Basis::E => {
            let mut parts = vec![Part::plain(1); n as usize];
            if mark.has_over() {
                parts.push(Part::new(0, Mark::Over));
            }
            if mark.has_under() {
                parts.push(Part::new(0, Mark::Under));
            }
            r.add_term(SuperPartition::new(parts).expect("valid"), F::one());
        }
        Basis::M | Basis::G => return Err(BasisError::NotMultiplicative(basis)),
    }
    Ok(r)
}

/// Coefficient of `m_Λ` in the `h` generator of the given mark.
fn complete_coefficient(sp: &SuperPartition, mark: Mark) -> i64 {
    let value = |m: Mark| sp.values_with(m).first().map(|&v| v as i64);
    match mark {
        Mark::Plain => 1,
        Mark::Over => value(Mark::Over).unwrap() + 1,
        Mark::Under => value(Mark::Under).unwrap() + 1,
        Mark::Both => match value(Mark::Both) {
            Some(b) => (b + 2) * (b + 1),
            None => {
                let (o, u) = (value(Mark::Over).unwrap(), value(Mark::Under).unwrap());
                let c = (o + 1) * (u + 1);
                if o >= u {
                    c
                } else {
                    -c
                }
            }
        },
    }
}

/// Generators of `h`, `e` and `g` as sums over a sector in the power-sum
/// basis, with weights `1/(z ζ)`, times `ω_Λ` for `e` and `α^{-ℓ}` for `g`.
///
/// Each term also carries [`single_variable_sign`]: the generators are read
/// off the kernel at one `y` variable, where `p_Λ(y)` is `±τ̄τ̲ y^n`.
pub fn compact_in_p<F: Scalar>(
    basis: Basis,
    mark: Mark,
    n: u32,
    alpha: &F,
) -> Result<AbstractPoly<F>, BasisError> {
    let mut r = AbstractPoly::zero(Basis::P);
    match basis {
        Basis::P => {
            if mark == Mark::Plain && n == 0 {
                return Err(BasisError::NoGenerator(basis, mark, n));
            }
            r.add_term(generator_index(mark, n), F::one());
        }
        Basis::H | Basis::E | Basis::G => {
            for sp in enumerate_sector(generator_sector(mark, n)) {
                let mut c = F::from_rational(Rational::one() / (z_norm(&sp) * zeta_norm(&sp)));
                if (basis == Basis::E && omega_exponent(&sp).rem_euclid(2) == 1) ^ single_variable_sign(&sp) {
                    c = -c;
                }
                if basis == Basis::G {
                    c = c * alpha.powi(-(sp.len() as i32));
                }
                r.add_term(sp, c);
            }
        }
        Basis::M => return Err(BasisError::NotMultiplicative(basis)),
    }
    Ok(r)
}

/// The four generator families of one multiplicative basis, in `p`.
#[derive(Clone, Debug)]
pub struct Families<F> {
    pub plain: Vec<AbstractPoly<F>>,
    pub over: Vec<AbstractPoly<F>>,
    pub under: Vec<AbstractPoly<F>>,
    pub both: Vec<AbstractPoly<F>>,
}

impl<F: Scalar> Families<F> {
    pub fn get(&self, mark: Mark, n: u32) -> &AbstractPoly<F> {
        let v = match mark {
            Mark::Plain => &self.plain,
            Mark::Over => &self.over,
            Mark::Under => &self.under,
            Mark::Both => &self.both,
        };
        &v[n as usize]
    }
}

fn p_gen<F: Scalar>(mark: Mark, r: u32) -> AbstractPoly<F> {
    if mark == Mark::Plain && r == 0 {
        AbstractPoly::zero(Basis::P)
    } else {
        AbstractPoly::single(Basis::P, generator_index(mark, r), F::one())
    }
}

/// `h` (or `e` when `elementary`) generators up to degree `max_n`, solved
/// from the Newton-type recursions against `p`.
pub fn hep_recursions<F: Scalar>(max_n: u32, elementary: bool) -> Families<F> {
    let mut fam = Families {
        plain: Vec::new(),
        over: Vec::new(),
        under: Vec::new(),
        both: Vec::new(),
    };
    let f = |k: i64| F::from_int(k);
    let m = |a: &AbstractPoly<F>, b: &AbstractPoly<F>| mul_free(a, b);
    for n in 0..=max_n {
        let nn = n as i64;
        // sign (-1)^{r+1} for e, 1 for h; inner sign -1 for e, +1 for h
        let outer = |r: u32| if elementary && r % 2 == 0 { f(-1) } else { f(1) };
        let inner = if elementary { f(-1) } else { f(1) };

        let plain = if n == 0 {
            AbstractPoly::one(Basis::P)
        } else {
            let mut s = AbstractPoly::zero(Basis::P);
            for r in 1..=n {
                s = s.add(&m(&p_gen(Mark::Plain, r), &fam.plain[(n - r) as usize]).scale(&outer(r)));
            }
            s.scale(&(F::one() / f(nn)))
        };
        fam.plain.push(plain);

        for (mark, list) in [(Mark::Over, 0), (Mark::Under, 1)] {
            let mut s = AbstractPoly::zero(Basis::P);
            for r in 0..=n {
                let rest = (n - r) as usize;
                let odd_rest = if list == 0 { &fam.over } else { &fam.under };
                let t = m(&p_gen(Mark::Plain, r), odd_rest.get(rest).unwrap_or(&AbstractPoly::zero(Basis::P)))
                    .add(&m(&p_gen(mark, r), &fam.plain[rest]).scale(&(inner.clone() * f(r as i64 + 1))));
                s = s.add(&t.scale(&outer(r)));
            }
            // the r = 0 term p_0 f_n vanishes, so s does not involve the unknown
            let v = s.scale(&(F::one() / f(nn + 1)));
            if list == 0 {
                fam.over.push(v);
            } else {
                fam.under.push(v);
            }
        }

        let mut s = AbstractPoly::zero(Basis::P);
        for r in 0..=n {
            let rest = (n - r) as usize;
            let rr = r as i64;
            let zero = AbstractPoly::zero(Basis::P);
            let both_rest = fam.both.get(rest).unwrap_or(&zero);
            let t = m(&p_gen(Mark::Plain, r), both_rest)
                .add(
                    &m(&p_gen(Mark::Over, r), &fam.under[rest])
                        .add(&m(&fam.over[rest], &p_gen(Mark::Under, r)))
                        .scale(&(inner.clone() * f(rr + 1))),
                )
                .add(&m(&p_gen(Mark::Both, r), &fam.plain[rest]).scale(&f((rr + 2) * (rr + 1))));
            s = s.add(&t.scale(&outer(r)));
        }
        fam.both.push(s.scale(&(F::one() / f(nn + 2))));
    }
    fam
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use crate::spar::sp;

    type Q = Rational;

    fn mono(pairs: &[(&str, i64)]) -> BTreeMap<SuperPartition, i64> {
        pairs.iter().map(|&(s, c)| (sp(s), c)).collect()
    }

    #[test]
    fn golden_product() {
        let got = monomial_product(&sp("[1o,1u,0u]"), &sp("[1o,0o]"));
        let want = mono(&[
            ("[2b,1o,0b]", -1),
            ("[2b,1o,0o,0u]", -1),
            ("[1b,1o,1u,0o]", -1),
            ("[1b,1b,1o]", 2),
        ]);
        assert_eq!(got, want);
    }

    #[test]
    fn classical_products() {
        assert_eq!(monomial_product(&sp("[1]"), &sp("[1]")), mono(&[("[2]", 1), ("[1,1]", 2)]));
        assert_eq!(
            monomial_product(&sp("[1,1]"), &sp("[1]")),
            mono(&[("[2,1]", 1), ("[1,1,1]", 3)])
        );
        assert_eq!(
            monomial_product(&sp("[0b,0b]"), &sp("[1]")),
            mono(&[("[1b,0b]", 1), ("[1,0b,0b]", 1)])
        );
        // p̄_0 squares to zero
        assert!(monomial_product(&sp("[0o]"), &sp("[0o]")).is_empty());
    }

    #[test]
    fn power_sum_with_fermions() {
        // p(2o,1u) = m(2o,1u) + m(3b)
        let got = monomial_product(&sp("[2o]"), &sp("[1u]"));
        assert_eq!(got, mono(&[("[2o,1u]", 1), ("[3b]", 1)]));
    }

    #[test]
    fn free_product_signs() {
        assert_eq!(free_product(&sp("[0u]"), &sp("[2o]")), Some((sp("[2o,0u]"), true)));
        assert_eq!(free_product(&sp("[2o]"), &sp("[0u]")), Some((sp("[2o,0u]"), false)));
        assert_eq!(free_product(&sp("[1o]"), &sp("[1o]")), None);
        assert_eq!(free_product(&sp("[1b]"), &sp("[1b,1]")), Some((sp("[1b,1b,1]"), false)));
    }

    #[test]
    fn complete_closed_forms() {
        let h2: AbstractPoly<Q> = generator_in_m(Basis::H, Mark::Over, 2).unwrap();
        for (s, c) in [("[2o]", 3), ("[2,0o]", 1), ("[1o,1]", 2), ("[1,1,0o]", 1)] {
            assert_eq!(h2.coeff(&sp(s)), int(c), "{s}");
        }
        assert_eq!(h2.len(), 4);
        let h1: AbstractPoly<Q> = generator_in_m(Basis::H, Mark::Both, 1).unwrap();
        for (s, c) in [("[1b]", 6), ("[1o,0u]", 2), ("[1u,0o]", -2), ("[1,0b]", 2), ("[1,0o,0u]", 1)] {
            assert_eq!(h1.coeff(&sp(s)), int(c), "{s}");
        }
        assert_eq!(h1.len(), 5);
    }

    #[test]
    fn norms() {
        assert_eq!(z_norm(&sp("[2,2,1,0o]")), int(8));
        assert_eq!(zeta_norm(&sp("[1b,1b,0b]")), rat(2, 4));
        assert_eq!(omega_exponent(&sp("[2o,1b,1]")), 2);
        assert_eq!(power_sum_diagonal(&sp("[1b,1b,1,1,1]")), 12);
    }

    #[test]
    fn recursions_match_compact_formulas() {
        let one = int(1);
        for elementary in [false, true] {
            let fam = hep_recursions::<Q>(5, elementary);
            let basis = if elementary { Basis::E } else { Basis::H };
            for mark in Mark::ALL {
                for n in 0..=5 {
                    let want = compact_in_p(basis, mark, n, &one).unwrap();
                    assert_eq!(fam.get(mark, n), &want, "{basis} {mark:?} {n}");
                }
            }
        }
    }
}
