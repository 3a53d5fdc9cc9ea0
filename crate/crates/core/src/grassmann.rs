//! Explicit polynomials in commuting variables `x_1..x_N` and anticommuting
//! variables attached to each `x_i`.
//!
//! Every variable carries `F` fermion slots. The Grassmann generators are
//! numbered `var * F + slot` and a monomial stores its fermions as a bitmask,
//! always read in increasing generator order. For two families slot 0 is
//! `φ` and slot 1 is `θ`, so the reading order is `φ1 θ1 φ2 θ2 ...`.
//!
//! This module is deliberately naive. It is the reference the abstract
//! algebra is tested against.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::One;

use crate::bases::{AbstractPoly, Basis};
use crate::scalar::{int, Rational, Scalar};
use crate::spar::{enumerate_sector, partitions, Mark, Sector, SuperPartition};

/// Number of variables and fermion families.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct VarConfig {
    pub n_vars: usize,
    pub families: usize,
}

impl VarConfig {
    pub fn new(n_vars: usize, families: usize) -> Self {
        assert!(n_vars * families <= 64, "at most 64 Grassmann generators");
        VarConfig { n_vars, families }
    }

    /// Two families (`φ`, `θ`).
    pub fn n2(n_vars: usize) -> Self {
        Self::new(n_vars, 2)
    }

    pub fn gen(&self, var: usize, slot: usize) -> u32 {
        debug_assert!(var < self.n_vars && slot < self.families);
        (var * self.families + slot) as u32
    }

    /// Mask of all generators in one slot.
    pub fn slot_mask(&self, slot: usize) -> u64 {
        (0..self.n_vars).fold(0, |m, v| m | 1u64 << self.gen(v, slot))
    }

    fn var_word(&self, var: usize, slots: u64) -> u64 {
        let mut m = 0;
        for s in 0..self.families {
            if slots >> s & 1 == 1 {
                m |= 1u64 << self.gen(var, s);
            }
        }
        m
    }
}

/// Slots used by a mark when there are two families.
pub fn mark_slots(m: Mark) -> u64 {
    (m.has_over() as u64) | (m.has_under() as u64) << 1
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GMonomial {
    pub x: Vec<u32>,
    pub fermions: u64,
}

impl GMonomial {
    pub fn degree(&self) -> u32 {
        self.x.iter().sum()
    }

    /// Fermion count in one slot.
    pub fn slot_count(&self, cfg: &VarConfig, slot: usize) -> u32 {
        (self.fermions & cfg.slot_mask(slot)).count_ones()
    }

    /// Variables carrying a fermion in `slot`, as a bitmask over variables.
    pub fn slot_vars(&self, cfg: &VarConfig, slot: usize) -> u64 {
        (0..cfg.n_vars).fold(0, |m, v| {
            m | ((self.fermions >> cfg.gen(v, slot) & 1) << v)
        })
    }
}

/// Sign of the product of two canonical words: `None` if they share a
/// generator, otherwise `Some(true)` when reordering is odd.
pub fn word_sign(a: u64, b: u64) -> Option<bool> {
    if a & b != 0 {
        return None;
    }
    let mut parity = 0;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        parity += a.checked_shr(j + 1).unwrap_or(0).count_ones();
        rest &= rest - 1;
    }
    Some(parity % 2 == 1)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum OracleError {
    /// Too few variables to read off every monomial in the sector.
    UnstableVariableCount { needed: usize, have: usize },
    NotSymmetric,
    Unsupported(&'static str),
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::UnstableVariableCount { needed, have } => {
                write!(f, "need at least {needed} variables, have {have}")
            }
            OracleError::NotSymmetric => write!(f, "polynomial is not symmetric"),
            OracleError::Unsupported(w) => write!(f, "unsupported: {w}"),
        }
    }
}

/// Explicit polynomial with coefficients in `F`.
#[derive(Clone, PartialEq, Debug)]
pub struct ExplicitPoly<F> {
    cfg: VarConfig,
    terms: BTreeMap<GMonomial, F>,
}

impl<F: Scalar> ExplicitPoly<F> {
    pub fn zero(cfg: VarConfig) -> Self {
        ExplicitPoly {
            cfg,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(cfg: VarConfig) -> Self {
        let mut p = Self::zero(cfg);
        p.add_term(
            GMonomial {
                x: vec![0; cfg.n_vars],
                fermions: 0,
            },
            F::one(),
        );
        p
    }

    /// `x_var`.
    pub fn x(cfg: VarConfig, var: usize) -> Self {
        let mut x = vec![0; cfg.n_vars];
        x[var] = 1;
        let mut p = Self::zero(cfg);
        p.add_term(GMonomial { x, fermions: 0 }, F::one());
        p
    }

    /// The fermion in `slot` attached to `var`.
    pub fn fermion(cfg: VarConfig, var: usize, slot: usize) -> Self {
        let mut p = Self::zero(cfg);
        p.add_term(
            GMonomial {
                x: vec![0; cfg.n_vars],
                fermions: 1 << cfg.gen(var, slot),
            },
            F::one(),
        );
        p
    }

    pub fn config(&self) -> VarConfig {
        self.cfg
    }

    pub fn terms(&self) -> &BTreeMap<GMonomial, F> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &GMonomial) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    pub fn add_term(&mut self, m: GMonomial, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = v.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-F::one()))
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut r = Self::zero(self.cfg);
        for (m, v) in &self.terms {
            r.add_term(m.clone(), v.clone() * c.clone());
        }
        r
    }

    /// Product in the superalgebra.
    pub fn mul(&self, o: &Self) -> Self {
        self.mul_filtered(o, |_| true)
    }

    /// Product keeping only monomials accepted by `keep`. The filter must be
    /// monotone (a rejected monomial stays rejected after multiplication).
    pub fn mul_filtered(&self, o: &Self, keep: impl Fn(&GMonomial) -> bool) -> Self {
        assert_eq!(self.cfg, o.cfg);
        let mut r = Self::zero(self.cfg);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let Some(neg) = word_sign(ma.fermions, mb.fermions) else {
                    continue;
                };
                let m = GMonomial {
                    x: ma.x.iter().zip(&mb.x).map(|(a, b)| a + b).collect(),
                    fermions: ma.fermions | mb.fermions,
                };
                if !keep(&m) {
                    continue;
                }
                let c = ca.clone() * cb.clone();
                r.add_term(m, if neg { -c } else { c });
            }
        }
        r
    }

    pub fn filter(&self, keep: impl Fn(&GMonomial) -> bool) -> Self {
        ExplicitPoly {
            cfg: self.cfg,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// `Σ_i ψ_i ∂f/∂x_i` with `ψ_i` the fermion of `slot` on `x_i`, placed
    /// on the left.
    pub fn exterior_d(&self, slot: usize) -> Self {
        let mut r = Self::zero(self.cfg);
        for (m, c) in &self.terms {
            for i in 0..self.cfg.n_vars {
                if m.x[i] == 0 {
                    continue;
                }
                let g = self.cfg.gen(i, slot);
                if m.fermions >> g & 1 == 1 {
                    continue;
                }
                let neg = (m.fermions & ((1u64 << g) - 1)).count_ones() % 2 == 1;
                let mut x = m.x.clone();
                x[i] -= 1;
                let v = c.clone() * F::from_int(m.x[i] as i64);
                r.add_term(
                    GMonomial {
                        x,
                        fermions: m.fermions | 1 << g,
                    },
                    if neg { -v } else { v },
                );
            }
        }
        r
    }

    /// Multiplies each monomial with `k` fermions by `(-1)^(k(k-1)/2)`.
    pub fn top(&self) -> Self {
        let mut r = Self::zero(self.cfg);
        for (m, c) in &self.terms {
            let k = m.fermions.count_ones() as u64;
            let neg = (k * k.saturating_sub(1) / 2) % 2 == 1;
            r.add_term(m.clone(), if neg { -c.clone() } else { c.clone() });
        }
        r
    }

    /// Relabels variables by `perm` (variable `v` becomes `perm[v]`).
    pub fn permute_vars(&self, perm: &[usize]) -> Self {
        let f = self.cfg.families;
        let mut r = Self::zero(self.cfg);
        for (m, c) in &self.terms {
            let mut x = vec![0; self.cfg.n_vars];
            for (v, &e) in m.x.iter().enumerate() {
                x[perm[v]] = e;
            }
            let mut seq = Vec::new();
            let mut rest = m.fermions;
            while rest != 0 {
                let g = rest.trailing_zeros() as usize;
                seq.push((perm[g / f] * f + g % f) as u32);
                rest &= rest - 1;
            }
            let mut inv = 0;
            for i in 0..seq.len() {
                for j in i + 1..seq.len() {
                    inv += (seq[i] > seq[j]) as u32;
                }
            }
            let fermions = seq.iter().fold(0u64, |a, &g| a | 1 << g);
            let v = c.clone();
            r.add_term(GMonomial { x, fermions }, if inv % 2 == 1 { -v } else { v });
        }
        r
    }

    /// Invariance under every exchange of two adjacent variables (with
    /// their fermions).
    pub fn is_symmetric(&self) -> bool {
        let n = self.cfg.n_vars;
        (0..n.saturating_sub(1)).all(|i| {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.swap(i, i + 1);
            self.permute_vars(&perm) == *self
        })
    }

    /// Moves into an alphabet of `total` variables, shifting indices by
    /// `offset`. Relative generator order is preserved, so no signs appear.
    pub fn embed(&self, total: usize, offset: usize) -> Self {
        assert!(offset + self.cfg.n_vars <= total);
        let cfg = VarConfig::new(total, self.cfg.families);
        let shift = offset * self.cfg.families;
        let mut r = Self::zero(cfg);
        for (m, c) in &self.terms {
            let mut x = vec![0; total];
            x[offset..offset + self.cfg.n_vars].copy_from_slice(&m.x);
            r.add_term(
                GMonomial {
                    x,
                    fermions: m.fermions << shift,
                },
                c.clone(),
            );
        }
        r
    }

    /// Changes the coefficient field.
    pub fn map_coeffs<G: Scalar>(&self, f: impl Fn(&F) -> G) -> ExplicitPoly<G> {
        let mut r = ExplicitPoly::zero(self.cfg);
        for (m, c) in &self.terms {
            r.add_term(m.clone(), f(c));
        }
        r
    }
}

/// `m` attached to parts given as `(value, slot set)`: the sum over distinct
/// placements of the parts on distinct variables, each placed part
/// contributing `x^value` and its fermions, read in part order.
pub fn symmetric_monomial<F: Scalar>(cfg: VarConfig, parts: &[(u32, u64)]) -> ExplicitPoly<F> {
    fn go<F: Scalar>(
        cfg: &VarConfig,
        parts: &[(u32, u64)],
        k: usize,
        used: u64,
        last_var: usize,
        x: &mut Vec<u32>,
        word: u64,
        neg: bool,
        out: &mut ExplicitPoly<F>,
    ) {
        if k == parts.len() {
            let c = if neg { -F::one() } else { F::one() };
            out.add_term(
                GMonomial {
                    x: x.clone(),
                    fermions: word,
                },
                c,
            );
            return;
        }
        // identical parts are unordered: force increasing variables
        let start = if k > 0 && parts[k] == parts[k - 1] {
            last_var + 1
        } else {
            0
        };
        for v in start..cfg.n_vars {
            if used >> v & 1 == 1 {
                continue;
            }
            let w = cfg.var_word(v, parts[k].1);
            let Some(s) = word_sign(word, w) else { continue };
            x[v] = parts[k].0;
            go(cfg, parts, k + 1, used | 1 << v, v, x, word | w, neg ^ s, out);
            x[v] = 0;
        }
    }
    let mut out = ExplicitPoly::zero(cfg);
    if parts.len() > cfg.n_vars {
        return out;
    }
    go(
        &cfg,
        parts,
        0,
        0,
        0,
        &mut vec![0; cfg.n_vars],
        0,
        false,
        &mut out,
    );
    out
}

/// Monomial symmetric function `m_Λ` in `cfg.n_vars` variables.
pub fn monomial_explicit<F: Scalar>(sp: &SuperPartition, cfg: VarConfig) -> ExplicitPoly<F> {
    assert_eq!(cfg.families, 2);
    let parts: Vec<(u32, u64)> = sp
        .parts()
        .iter()
        .map(|p| (p.value, mark_slots(p.mark)))
        .collect();
    symmetric_monomial(cfg, &parts)
}

/// The term of `m_Λ` with part `i` on variable `i`; its coefficient is `+1`.
pub fn leading_monomial(parts: &[(u32, u64)], cfg: &VarConfig) -> GMonomial {
    let mut x = vec![0; cfg.n_vars];
    let mut fermions = 0;
    for (v, &(val, slots)) in parts.iter().enumerate() {
        x[v] = val;
        fermions |= cfg.var_word(v, slots);
    }
    GMonomial { x, fermions }
}

/// Sector of a monomial when there are two families.
pub fn monomial_sector(m: &GMonomial, cfg: &VarConfig) -> Sector {
    Sector::new(m.degree(), m.slot_count(cfg, 0), m.slot_count(cfg, 1))
}

/// How to treat monomials `m_Λ` with more parts than variables.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Lift {
    /// Refuse unless every `m_Λ` of the sector survives.
    Strict,
    /// Take the coefficients of the vanishing `m_Λ` to be zero.
    Minimal,
}

/// Coefficients of `f` on the monomial basis, restricted to one sector.
///
/// Reads the coefficient of the leading monomial of each `m_Λ`, then checks
/// that the recombination reproduces the sector component of `f`.
pub fn extract_m_coeffs<F: Scalar>(
    f: &ExplicitPoly<F>,
    sector: Sector,
) -> Result<AbstractPoly<F>, OracleError> {
    extract_m_coeffs_with(f, sector, Lift::Strict)
}

/// [`extract_m_coeffs`] with an explicit policy for short alphabets.
pub fn extract_m_coeffs_with<F: Scalar>(
    f: &ExplicitPoly<F>,
    sector: Sector,
    lift: Lift,
) -> Result<AbstractPoly<F>, OracleError> {
    let cfg = f.config();
    if cfg.families != 2 {
        return Err(OracleError::Unsupported("extraction needs two families"));
    }
    let needed = sector.max_length();
    if cfg.n_vars < needed && lift == Lift::Strict {
        return Err(OracleError::UnstableVariableCount {
            needed,
            have: cfg.n_vars,
        });
    }
    let part = f.filter(|m| monomial_sector(m, &cfg) == sector);
    let mut out = AbstractPoly::zero(Basis::M);
    let mut rebuilt = ExplicitPoly::zero(cfg);
    for sp in enumerate_sector(sector).into_iter().filter(|s| s.len() <= cfg.n_vars) {
        let parts: Vec<(u32, u64)> = sp
            .parts()
            .iter()
            .map(|p| (p.value, mark_slots(p.mark)))
            .collect();
        let c = part.coeff(&leading_monomial(&parts, &cfg));
        if c.is_zero() {
            continue;
        }
        rebuilt = rebuilt.add(&monomial_explicit::<F>(&sp, cfg).scale(&c));
        out.add_term(sp, c);
    }
    if rebuilt != part {
        return Err(OracleError::NotSymmetric);
    }
    Ok(out)
}

/// Extraction over every sector present in `f`.
pub fn extract_all<F: Scalar>(f: &ExplicitPoly<F>) -> Result<AbstractPoly<F>, OracleError> {
    extract_all_with(f, Lift::Strict)
}

/// [`extract_all`] with an explicit policy for short alphabets.
pub fn extract_all_with<F: Scalar>(f: &ExplicitPoly<F>, lift: Lift) -> Result<AbstractPoly<F>, OracleError> {
    let cfg = f.config();
    let mut sectors: Vec<Sector> = f
        .terms()
        .keys()
        .map(|m| monomial_sector(m, &cfg))
        .collect();
    sectors.sort();
    sectors.dedup();
    let mut out = AbstractPoly::zero(Basis::M);
    for s in sectors {
        out = out.add(&extract_m_coeffs_with(f, s, lift)?);
    }
    Ok(out)
}

/// Classical complete symmetric function `h_k`.
pub fn complete_explicit<F: Scalar>(k: u32, cfg: VarConfig) -> ExplicitPoly<F> {
    let mut r = ExplicitPoly::zero(cfg);
    for lambda in partitions(k) {
        let parts: Vec<(u32, u64)> = lambda.iter().map(|&v| (v, 0)).collect();
        r = r.add(&symmetric_monomial(cfg, &parts));
    }
    if k == 0 {
        r = ExplicitPoly::one(cfg);
    }
    r
}

/// Classical elementary symmetric function `e_k`.
pub fn elementary_explicit<F: Scalar>(k: u32, cfg: VarConfig) -> ExplicitPoly<F> {
    if k == 0 {
        return ExplicitPoly::one(cfg);
    }
    symmetric_monomial(cfg, &vec![(1, 0); k as usize])
}

/// `Σ_i (fermions of slots on i) x_i^n`, read in slot order.
pub fn power_sum_explicit<F: Scalar>(n: u32, slots: u64, cfg: VarConfig) -> ExplicitPoly<F> {
    let mut r = ExplicitPoly::zero(cfg);
    for v in 0..cfg.n_vars {
        let mut x = vec![0; cfg.n_vars];
        x[v] = n;
        r.add_term(
            GMonomial {
                x,
                fermions: cfg.var_word(v, slots),
            },
            F::one(),
        );
    }
    r
}

/// Generators of `p`, `h`, `e` as explicit polynomials.
///
/// Power sums come from the direct formula; `h` and `e` from the classical
/// functions by the fermionic derivatives:
/// `f̄_n = d̄ f_{n+1}`, `f̲_n = d̲ f_{n+1}`, and `d̄ d̲ f_{n+2}` for both.
pub fn generator_explicit(
    family: Basis,
    mark: Mark,
    n: u32,
    cfg: VarConfig,
) -> Result<ExplicitPoly<Rational>, OracleError> {
    assert_eq!(cfg.families, 2);
    let k = mark.fermions();
    let classical = |m: u32| match family {
        Basis::H => Ok(complete_explicit(m, cfg)),
        Basis::E => Ok(elementary_explicit(m, cfg)),
        _ => Err(OracleError::Unsupported("family")),
    };
    match family {
        Basis::P => {
            if mark == Mark::Plain && n == 0 {
                return Err(OracleError::Unsupported("p_0"));
            }
            Ok(power_sum_explicit(n, mark_slots(mark), cfg))
        }
        Basis::H | Basis::E => {
            let base = classical(n + k)?;
            Ok(apply_mark_derivatives(&base, mark))
        }
        _ => Err(OracleError::Unsupported("family")),
    }
}

/// `d̄`, `d̲` or `d̄ d̲` according to the mark.
pub fn apply_mark_derivatives<F: Scalar>(f: &ExplicitPoly<F>, mark: Mark) -> ExplicitPoly<F> {
    match mark {
        Mark::Plain => f.clone(),
        Mark::Over => f.exterior_d(0),
        Mark::Under => f.exterior_d(1),
        Mark::Both => f.exterior_d(1).exterior_d(0),
    }
}

/// Power sums through derivatives: `(1/(n+1)) d̄ p_{n+1}`, etc.
pub fn power_sum_by_derivative(mark: Mark, n: u32, cfg: VarConfig) -> ExplicitPoly<Rational> {
    let k = mark.fermions();
    let base: ExplicitPoly<Rational> = power_sum_explicit(n + k, 0, cfg);
    let norm: i64 = (n + 1..=n + k).map(|v| v as i64).product();
    apply_mark_derivatives(&base, mark).scale(&(Rational::one() / int(norm)))
}

/// Shape of a generating function `F(tx + τ̄φ + τ̲θ)`.
#[derive(Clone, Debug)]
pub enum GenKind<F> {
    /// `Π_i 1/(1 - u_i)`
    Complete,
    /// `Π_i (1 + u_i)`
    Elementary,
    /// `Σ_i u_i/(1 - u_i)`
    PowerSum,
    /// `Π_i (1 - u_i)^(-β)`
    Jack(F),
}

/// Explicit `F(u)` with `u_i = x_i + τ̄ φ_i + τ̲ θ_i`, where `t` is tracked by
/// the `x` degree (kept `<= max_degree`).
///
/// Works in an alphabet of `n_vars + 1` variables whose last one holds
/// `τ̄, τ̲` and never carries an `x`. Use [`split_tau`] to read off the four
/// components.
pub fn generating_function_explicit<F: Scalar>(
    kind: &GenKind<F>,
    n_vars: usize,
    max_degree: u32,
) -> ExplicitPoly<F> {
    let cfg = VarConfig::n2(n_vars + 1);
    let keep = |m: &GMonomial| m.degree() <= max_degree;
    let tau_bar = ExplicitPoly::<F>::fermion(cfg, n_vars, 0);
    let tau_under = ExplicitPoly::<F>::fermion(cfg, n_vars, 1);
    let u = |i: usize| {
        ExplicitPoly::<F>::x(cfg, i)
            .add(&tau_bar.mul(&ExplicitPoly::fermion(cfg, i, 0)))
            .add(&tau_under.mul(&ExplicitPoly::fermion(cfg, i, 1)))
    };
    // u_i^k has x degree >= k - 2
    let top = max_degree as usize + 2;
    let series = |i: usize, coef: &dyn Fn(usize) -> F, from: usize| {
        let ui = u(i);
        let mut pow = ExplicitPoly::one(cfg);
        let mut acc = ExplicitPoly::zero(cfg);
        for k in 0..=top {
            if k >= from {
                acc = acc.add(&pow.scale(&coef(k)));
            }
            pow = pow.mul_filtered(&ui, keep);
        }
        acc
    };
    match kind {
        GenKind::Complete => (0..n_vars).fold(ExplicitPoly::one(cfg), |a, i| {
            a.mul_filtered(&series(i, &|_| F::one(), 0), keep)
        }),
        GenKind::Elementary => (0..n_vars).fold(ExplicitPoly::one(cfg), |a, i| {
            a.mul_filtered(&ExplicitPoly::one(cfg).add(&u(i)), keep)
        }),
        GenKind::PowerSum => (0..n_vars).fold(ExplicitPoly::zero(cfg), |a, i| {
            a.add(&series(i, &|_| F::one(), 1))
        }),
        GenKind::Jack(beta) => {
            // (β)_k / k!
            let coef = |k: usize| {
                let mut c = F::one();
                for j in 0..k {
                    c = c * (beta.clone() + F::from_int(j as i64)) / F::from_int(j as i64 + 1);
                }
                c
            };
            (0..n_vars).fold(ExplicitPoly::one(cfg), |a, i| {
                a.mul_filtered(&series(i, &coef, 0), keep)
            })
        }
    }
}

/// Splits `f = A + τ̄ B + τ̲ C + τ̄ τ̲ D` (with `τ` on the left) where `τ̄, τ̲`
/// are the fermions of the last variable. Returns `[A, B, C, D]` in the
/// alphabet without that variable.
pub fn split_tau<F: Scalar>(f: &ExplicitPoly<F>) -> [ExplicitPoly<F>; 4] {
    let big = f.config();
    let n = big.n_vars - 1;
    let cfg = VarConfig::n2(n);
    let (tb, tu) = (1u64 << big.gen(n, 0), 1u64 << big.gen(n, 1));
    let mut out = [
        ExplicitPoly::zero(cfg),
        ExplicitPoly::zero(cfg),
        ExplicitPoly::zero(cfg),
        ExplicitPoly::zero(cfg),
    ];
    for (m, c) in f.terms() {
        let w = m.fermions & !(tb | tu);
        let odd = w.count_ones() % 2 == 1;
        let (k, neg) = match (m.fermions & tb != 0, m.fermions & tu != 0) {
            (false, false) => (0, false),
            (true, false) => (1, odd),
            (false, true) => (2, odd),
            (true, true) => (3, false),
        };
        let mono = GMonomial {
            x: m.x[..n].to_vec(),
            fermions: w,
        };
        out[k].add_term(mono, if neg { -c.clone() } else { c.clone() });
    }
    out
}

/// Components `(f_n, d̄ f_{n+1}, d̲ f_{n+1}, -d̄ d̲ f_{n+2})` obtained by
/// acting with `(1 + D̄)(1 + D̲)` on a classical series `Σ t^n f_n`.
pub fn master_operator_components<F: Scalar>(
    classical: &dyn Fn(u32) -> ExplicitPoly<F>,
    n: u32,
) -> [ExplicitPoly<F>; 4] {
    let f1 = classical(n + 1);
    [
        classical(n),
        f1.exterior_d(0),
        f1.exterior_d(1),
        classical(n + 2).exterior_d(1).exterior_d(0).scale(&-F::one()),
    ]
}

impl<F: Scalar> fmt::Display for ExplicitPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let fam = self.cfg.families;
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            let mut rest = m.fermions;
            while rest != 0 {
                let g = rest.trailing_zeros() as usize;
                let (v, s) = (g / fam, g % fam);
                if fam == 2 {
                    write!(f, "*{}{}", if s == 0 { "phi" } else { "theta" }, v + 1)?;
                } else {
                    write!(f, "*th{}_{}", fam - s, v + 1)?;
                }
                rest &= rest - 1;
            }
            for (v, &e) in m.x.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*x{}", v + 1)?,
                    _ => write!(f, "*x{}^{e}", v + 1)?,
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;
    use crate::spar::sp;

    type Q = Rational;

    fn cfg3() -> VarConfig {
        VarConfig::n2(3)
    }

    /// Builds `c * x^a * (word)` where `word` lists `(var, slot)` in the
    /// order written.
    fn term(cfg: VarConfig, c: i64, x: &[u32], word: &[(usize, usize)]) -> ExplicitPoly<Q> {
        let mut p = ExplicitPoly::one(cfg).scale(&int(c));
        for &(v, s) in word {
            p = p.mul(&ExplicitPoly::fermion(cfg, v, s));
        }
        for (v, &e) in x.iter().enumerate() {
            for _ in 0..e {
                p = p.mul(&ExplicitPoly::x(cfg, v));
            }
        }
        p
    }

    #[test]
    fn word_signs() {
        assert_eq!(word_sign(0b01, 0b10), Some(false));
        assert_eq!(word_sign(0b10, 0b01), Some(true));
        assert_eq!(word_sign(0b110, 0b001), Some(false));
        assert_eq!(word_sign(0b1, 0b1), None);
        assert_eq!(word_sign(1 << 63, 1), Some(true));
    }

    #[test]
    fn anticommutation() {
        let c = cfg3();
        let a = ExplicitPoly::<Q>::fermion(c, 0, 0);
        let b = ExplicitPoly::<Q>::fermion(c, 1, 1);
        assert_eq!(a.mul(&b), b.mul(&a).scale(&int(-1)));
        assert!(a.mul(&a).is_empty());
    }

    #[test]
    fn monomial_example_three_vars() {
        // m(2o,0o,0u) = φ1φ2θ3(x1²−x2²) + θ1φ2φ3(x2²−x3²) + φ1θ2φ3(x3²−x1²)
        let c = cfg3();
        let phi = |v| (v, 0);
        let th = |v| (v, 1);
        let want = term(c, 1, &[2, 0, 0], &[phi(0), phi(1), th(2)])
            .add(&term(c, -1, &[0, 2, 0], &[phi(0), phi(1), th(2)]))
            .add(&term(c, 1, &[0, 2, 0], &[th(0), phi(1), phi(2)]))
            .add(&term(c, -1, &[0, 0, 2], &[th(0), phi(1), phi(2)]))
            .add(&term(c, 1, &[0, 0, 2], &[phi(0), th(1), phi(2)]))
            .add(&term(c, -1, &[2, 0, 0], &[phi(0), th(1), phi(2)]));
        let got = monomial_explicit::<Q>(&sp("[2o,0o,0u]"), c);
        assert_eq!(got, want);
        assert!(got.is_symmetric());
    }

    #[test]
    fn worked_polynomial_is_the_same_monomial() {
        let c = cfg3();
        let phi = |v| (v, 0);
        let th = |v| (v, 1);
        let f = term(c, 1, &[2, 0, 0], &[phi(0), phi(1), th(2)])
            .add(&term(c, 1, &[2, 0, 0], &[phi(0), phi(2), th(1)]))
            .add(&term(c, 1, &[0, 2, 0], &[phi(1), phi(2), th(0)]))
            .add(&term(c, -1, &[0, 2, 0], &[phi(0), phi(1), th(2)]))
            .add(&term(c, -1, &[0, 0, 2], &[phi(0), phi(2), th(1)]))
            .add(&term(c, -1, &[0, 0, 2], &[phi(1), phi(2), th(0)]));
        assert!(f.is_symmetric());
        assert!(extract_m_coeffs(&f, Sector::new(2, 2, 1)).is_err());
        let e = extract_m_coeffs_with(&f, Sector::new(2, 2, 1), Lift::Minimal).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e.coeff(&sp("[2o,0o,0u]")), int(1));
    }

    #[test]
    fn unstable_and_nonsymmetric() {
        let c = cfg3();
        let f = monomial_explicit::<Q>(&sp("[1,1,1]"), c);
        assert!(matches!(
            extract_m_coeffs(&f, Sector::new(3, 1, 0)),
            Err(OracleError::UnstableVariableCount { .. })
        ));
        let g = ExplicitPoly::<Q>::x(c, 0);
        assert!(!g.is_symmetric());
        assert_eq!(extract_m_coeffs(&g, Sector::new(1, 0, 0)), Err(OracleError::NotSymmetric));
    }

    #[test]
    fn derivative_of_classical_monomial() {
        // d̄ m(3,3,2,1) = 3 m(3,2o,2,1) + 2 m(3,3,1o,1) + m(3,3,2,0o)
        let c = VarConfig::n2(9);
        let f = monomial_explicit::<Q>(&sp("[3,3,2,1]"), c).exterior_d(0);
        let e = extract_all(&f).unwrap();
        assert_eq!(e.len(), 3);
        assert_eq!(e.coeff(&sp("[3,2o,2,1]")), int(3));
        assert_eq!(e.coeff(&sp("[3,3,1o,1]")), int(2));
        assert_eq!(e.coeff(&sp("[3,3,2,0o]")), int(1));
    }

    #[test]
    fn top_signs() {
        let c = cfg3();
        let f = monomial_explicit::<Q>(&sp("[1o,0u]"), c);
        assert_eq!(f.top(), f.scale(&int(-1)));
        let g = monomial_explicit::<Q>(&sp("[2b,0o]"), c);
        assert_eq!(g.top(), g.scale(&int(-1)));
        let h = monomial_explicit::<Q>(&sp("[1b,0b]"), VarConfig::n2(2));
        assert_eq!(h.top(), h);
    }

    #[test]
    fn power_sums_two_ways() {
        let c = VarConfig::n2(3);
        for mark in Mark::ALL {
            for n in 0..4 {
                if mark == Mark::Plain && n == 0 {
                    continue;
                }
                let a = generator_explicit(Basis::P, mark, n, c).unwrap();
                assert_eq!(a, power_sum_by_derivative(mark, n, c), "{mark:?} {n}");
            }
        }
    }

    #[test]
    fn generating_function_components() {
        let n_vars = 3;
        let d = 3;
        let c = VarConfig::n2(n_vars);
        let gf = generating_function_explicit::<Q>(&GenKind::Complete, n_vars, d);
        let parts = split_tau(&gf);
        for n in 0..=d {
            let want = master_operator_components(&|k| complete_explicit(k, c), n);
            for k in 0..4 {
                let got = parts[k].filter(|m| m.degree() == n);
                assert_eq!(got, want[k], "component {k} degree {n}");
            }
        }
    }

    #[test]
    fn embedding_keeps_signs() {
        let f = monomial_explicit::<Q>(&sp("[1o,0u]"), VarConfig::n2(2));
        let g = f.embed(4, 2);
        assert_eq!(g.len(), f.len());
        let back = g.permute_vars(&[2, 3, 0, 1]);
        assert_eq!(back, f.embed(4, 0));
    }
}
