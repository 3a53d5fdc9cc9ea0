//! Change of basis, scalar product, involution and generating series.
//!
//! [`Algebra`] owns the Jack parameter `α` and memoises generator
//! expansions and per-sector transition matrices. Matrices act on row
//! vectors: if `f = Σ c_Λ a_Λ` then its coefficients in basis `b` are
//! `c · M(a, b)`, and row `Λ` of `M(a, m)` is the monomial expansion of
//! `a_Λ`.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::One;

use crate::bases::{
    self, compact_in_p, generator_index, mul_free, mul_m, omega_exponent, z_norm, zeta_norm,
    AbstractPoly, Basis, BasisError,
};
use crate::scalar::{Rational, Scalar};
use crate::spar::{enumerate_sector, Mark, Sector, SuperPartition};

/// Dense matrix.
#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Scalar> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows);
        let mut r = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let v = r.get(i, j).clone() + a.clone() * b.clone();
                        r.set(i, j, v);
                    }
                }
            }
        }
        r
    }

    /// Gauss-Jordan inverse; `None` if singular.
    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for c in 0..n {
            let p = (c..n).find(|&r| !a.get(r, c).is_zero())?;
            if p != c {
                for j in 0..n {
                    a.data.swap(p * n + j, c * n + j);
                    inv.data.swap(p * n + j, c * n + j);
                }
            }
            let d = a.get(c, c).clone();
            for j in 0..n {
                a.set(c, j, a.get(c, j).clone() / d.clone());
                inv.set(c, j, inv.get(c, j).clone() / d.clone());
            }
            for r in 0..n {
                if r == c || a.get(r, c).is_zero() {
                    continue;
                }
                let f = a.get(r, c).clone();
                for j in 0..n {
                    a.set(r, j, a.get(r, j).clone() - f.clone() * a.get(c, j).clone());
                    inv.set(r, j, inv.get(r, j).clone() - f.clone() * inv.get(c, j).clone());
                }
            }
        }
        Some(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }
}

/// Change of basis on one sector.
#[derive(Clone, PartialEq, Debug)]
pub struct TransitionMatrix<F> {
    pub sector: Sector,
    pub from: Basis,
    pub to: Basis,
    /// Row and column labels, as produced by `enumerate_sector`.
    pub order: Vec<SuperPartition>,
    pub matrix: Matrix<F>,
}

impl<F: Scalar> TransitionMatrix<F> {
    pub fn index(&self, sp: &SuperPartition) -> Option<usize> {
        self.order.iter().position(|s| s == sp)
    }

    /// Coefficient of `to_Γ` in `from_Λ`.
    pub fn entry(&self, lam: &SuperPartition, gam: &SuperPartition) -> F {
        match (self.index(lam), self.index(gam)) {
            (Some(i), Some(j)) => self.matrix.get(i, j).clone(),
            _ => F::zero(),
        }
    }

    pub fn row(&self, lam: &SuperPartition) -> AbstractPoly<F> {
        let i = self.index(lam).expect("superpartition outside sector");
        let mut r = AbstractPoly::zero(self.to);
        for (j, g) in self.order.iter().enumerate() {
            r.add_term(g.clone(), self.matrix.get(i, j).clone());
        }
        r
    }
}

type MatrixCache<F> = spin::Mutex<BTreeMap<(Sector, Basis), Arc<TransitionMatrix<F>>>>;
type PairCache<F> = spin::Mutex<BTreeMap<(Sector, Basis, Basis), Arc<TransitionMatrix<F>>>>;

/// Conversion engine for one value (or symbol) of `α`.
pub struct Algebra<F: Scalar> {
    alpha: F,
    gens: spin::Mutex<BTreeMap<(Basis, Mark, u32), AbstractPoly<F>>>,
    to_m: MatrixCache<F>,
    from_m: MatrixCache<F>,
    between: PairCache<F>,
}

impl<F: Scalar> Algebra<F> {
    pub fn new(alpha: F) -> Self {
        Algebra {
            alpha,
            gens: spin::Mutex::new(BTreeMap::new()),
            to_m: spin::Mutex::new(BTreeMap::new()),
            from_m: spin::Mutex::new(BTreeMap::new()),
            between: spin::Mutex::new(BTreeMap::new()),
        }
    }

    pub fn alpha(&self) -> &F {
        &self.alpha
    }

    /// Generator in the power-sum basis (closed sector sums).
    pub fn generator_in_p(&self, basis: Basis, mark: Mark, n: u32) -> Result<AbstractPoly<F>, BasisError> {
        compact_in_p(basis, mark, n, &self.alpha)
    }

    /// Generator in the monomial basis: closed forms for `p`, `h`, `e`;
    /// `g` goes through its power-sum expansion.
    pub fn generator_in_m(&self, basis: Basis, mark: Mark, n: u32) -> Result<AbstractPoly<F>, BasisError> {
        if let Some(v) = self.gens.lock().get(&(basis, mark, n)) {
            return Ok(v.clone());
        }
        let v = match basis {
            Basis::G => {
                let in_p = self.generator_in_p(basis, mark, n)?;
                self.convert(&in_p, Basis::M)
            }
            _ => bases::generator_in_m(basis, mark, n)?,
        };
        self.gens.lock().entry((basis, mark, n)).or_insert(v.clone());
        Ok(v)
    }

    /// `f_Λ` in the monomial basis as the ordered product of generators.
    pub fn expand_in_m(&self, basis: Basis, sp: &SuperPartition) -> AbstractPoly<F> {
        if basis == Basis::M {
            return AbstractPoly::single(Basis::M, sp.clone(), F::one());
        }
        let mut acc = AbstractPoly::one(Basis::M);
        for p in sp.parts() {
            let g = self
                .generator_in_m(basis, p.mark, p.value)
                .expect("parts of a superpartition index generators");
            acc = mul_m(&acc, &g);
        }
        acc
    }

    /// `f_Λ` in the power-sum basis as the ordered product of generators.
    pub fn expand_in_p(&self, basis: Basis, sp: &SuperPartition) -> AbstractPoly<F> {
        match basis {
            Basis::P => AbstractPoly::single(Basis::P, sp.clone(), F::one()),
            Basis::M => self.from_m_matrix(sp.sector(), Basis::P).row(sp),
            _ => {
                let mut acc = AbstractPoly::one(Basis::P);
                for p in sp.parts() {
                    let g = self
                        .generator_in_p(basis, p.mark, p.value)
                        .expect("parts of a superpartition index generators");
                    acc = mul_free(&acc, &g);
                }
                acc
            }
        }
    }

    /// `M(basis, m)` on a sector.
    pub fn to_m_matrix(&self, s: Sector, basis: Basis) -> Arc<TransitionMatrix<F>> {
        if let Some(v) = self.to_m.lock().get(&(s, basis)) {
            return v.clone();
        }
        let order = enumerate_sector(s);
        let mut matrix = Matrix::zeros(order.len(), order.len());
        for (i, lam) in order.iter().enumerate() {
            let row = self.expand_in_m(basis, lam);
            for (j, g) in order.iter().enumerate() {
                matrix.set(i, j, row.coeff(g));
            }
        }
        let t = Arc::new(TransitionMatrix {
            sector: s,
            from: basis,
            to: Basis::M,
            order,
            matrix,
        });
        self.to_m.lock().entry((s, basis)).or_insert(t).clone()
    }

    /// `M(m, basis)` on a sector.
    pub fn from_m_matrix(&self, s: Sector, basis: Basis) -> Arc<TransitionMatrix<F>> {
        if let Some(v) = self.from_m.lock().get(&(s, basis)) {
            return v.clone();
        }
        let t = self.to_m_matrix(s, basis);
        let inv = t.matrix.inverse().expect("transition matrices are invertible");
        let t = Arc::new(TransitionMatrix {
            sector: s,
            from: Basis::M,
            to: basis,
            order: t.order.clone(),
            matrix: inv,
        });
        self.from_m.lock().entry((s, basis)).or_insert(t).clone()
    }

    /// `M(from, to)` on a sector, composed through `m`.
    pub fn transition(&self, s: Sector, from: Basis, to: Basis) -> Arc<TransitionMatrix<F>> {
        match (from, to) {
            (Basis::M, b) if b != Basis::M => return self.from_m_matrix(s, b),
            (a, Basis::M) if a != Basis::M => return self.to_m_matrix(s, a),
            _ => {}
        }
        if let Some(v) = self.between.lock().get(&(s, from, to)) {
            return v.clone();
        }
        let matrix = if from == to {
            Matrix::identity(enumerate_sector(s).len())
        } else {
            self.to_m_matrix(s, from)
                .matrix
                .mul(&self.from_m_matrix(s, to).matrix)
        };
        let t = Arc::new(TransitionMatrix {
            sector: s,
            from,
            to,
            order: enumerate_sector(s),
            matrix,
        });
        self.between.lock().entry((s, from, to)).or_insert(t).clone()
    }

    /// Rewrites `f` in basis `to`, sector by sector.
    pub fn convert(&self, f: &AbstractPoly<F>, to: Basis) -> AbstractPoly<F> {
        if f.basis() == to {
            return f.clone();
        }
        let mut out = AbstractPoly::zero(to);
        for s in f.sectors() {
            let part = f.sector_part(s);
            let t = self.transition(s, f.basis(), to);
            for (i, lam) in t.order.iter().enumerate() {
                let c = part.coeff(lam);
                if c.is_zero() {
                    continue;
                }
                for (j, g) in t.order.iter().enumerate() {
                    let v = t.matrix.get(i, j);
                    if !v.is_zero() {
                        out.add_term(g.clone(), c.clone() * v.clone());
                    }
                }
            }
        }
        out
    }

    /// `⟨p_Λ | p_Λ⟩_α = (-1)^{binom(k,2)} z_Λ ζ_Λ α^{ℓ(Λ)}`.
    pub fn power_sum_norm(&self, sp: &SuperPartition) -> F {
        let v = F::from_rational(z_norm(sp) * zeta_norm(sp)) * self.alpha.powi(sp.len() as i32);
        if sp.sector().top_sign_negative() {
            -v
        } else {
            v
        }
    }

    /// Bilinear scalar product with `⟨p_Λ^⊤ | p_Ω⟩_α = z ζ α^ℓ δ`.
    pub fn inner(&self, f: &AbstractPoly<F>, g: &AbstractPoly<F>) -> F {
        let (fp, gp) = (self.convert(f, Basis::P), self.convert(g, Basis::P));
        let mut acc = F::zero();
        for (s, c) in fp.terms() {
            let d = gp.coeff(s);
            if !d.is_zero() {
                acc = acc + c.clone() * d * self.power_sum_norm(s);
            }
        }
        acc
    }

    /// The homomorphism sending each `e` generator to the `h` generator with
    /// the same index.
    pub fn omega_hat(&self, f: &AbstractPoly<F>) -> AbstractPoly<F> {
        let in_e = self.convert(f, Basis::E).relabel(Basis::H);
        self.convert(&in_e, f.basis())
    }

    /// The deformation acting on power sums by `ω_Λ α^{ℓ(Λ)}`.
    pub fn omega_alpha(&self, f: &AbstractPoly<F>) -> AbstractPoly<F> {
        let mut r = AbstractPoly::zero(Basis::P);
        for (s, c) in self.convert(f, Basis::P).terms() {
            let mut v = c.clone() * self.alpha.powi(s.len() as i32);
            if omega_exponent(s).rem_euclid(2) == 1 {
                v = -v;
            }
            r.add_term(s.clone(), v);
        }
        self.convert(&r, f.basis())
    }
}

/// Power series in `t` with Grassmann coefficients `τ̄, τ̲`:
/// `Σ t^n (A_n + τ̄ B_n + τ̲ C_n + τ̄ τ̲ D_n)` with `A..D` in the power-sum basis.
#[derive(Clone, PartialEq, Debug)]
pub struct Series<F> {
    pub max_n: u32,
    /// `[A, B, C, D]`, each indexed by degree.
    pub comps: [Vec<AbstractPoly<F>>; 4],
}

impl<F: Scalar> Series<F> {
    pub fn from_fn(max_n: u32, f: impl Fn(usize, u32) -> AbstractPoly<F>) -> Self {
        let comp = |k: usize| (0..=max_n).map(|n| f(k, n)).collect();
        Series {
            max_n,
            comps: [comp(0), comp(1), comp(2), comp(3)],
        }
    }

    pub fn one(max_n: u32) -> Self {
        Self::from_fn(max_n, |k, n| {
            if k == 0 && n == 0 {
                AbstractPoly::one(Basis::P)
            } else {
                AbstractPoly::zero(Basis::P)
            }
        })
    }

    /// Truncated product; `τ̄ B · τ̲ C = -τ̄τ̲ BC` since `B` is odd.
    pub fn mul(&self, o: &Self) -> Self {
        let max_n = self.max_n.min(o.max_n);
        Self::from_fn(max_n, |k, n| {
            let mut acc = AbstractPoly::zero(Basis::P);
            for r in 0..=n as usize {
                let s = n as usize - r;
                let (a, b) = (&self.comps, &o.comps);
                let t = match k {
                    0 => mul_free(&a[0][r], &b[0][s]),
                    1 => mul_free(&a[0][r], &b[1][s]).add(&mul_free(&a[1][r], &b[0][s])),
                    2 => mul_free(&a[0][r], &b[2][s]).add(&mul_free(&a[2][r], &b[0][s])),
                    _ => mul_free(&a[0][r], &b[3][s])
                        .add(&mul_free(&a[3][r], &b[0][s]))
                        .sub(&mul_free(&a[1][r], &b[2][s]))
                        .add(&mul_free(&a[2][r], &b[1][s])),
                };
                acc = acc.add(&t);
            }
            acc
        })
    }

    /// `F(-t, -τ̄, -τ̲)`.
    pub fn negate_arguments(&self) -> Self {
        Self::from_fn(self.max_n, |k, n| {
            let odd = (n % 2 == 1) ^ (k == 1 || k == 2);
            let v = &self.comps[k][n as usize];
            if odd {
                v.scale(&-F::one())
            } else {
                v.clone()
            }
        })
    }

    /// `(t∂_t + τ̄∂_τ̄ + τ̲∂_τ̲)`.
    pub fn euler(&self) -> Self {
        Self::from_fn(self.max_n, |k, n| {
            let w = n as i64 + [0, 1, 1, 2][k];
            self.comps[k][n as usize].scale(&F::from_int(w))
        })
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::from_fn(self.max_n, |k, n| self.comps[k][n as usize].scale(c))
    }
}

/// Generating series of `h` (`Complete`), `e` (`Elementary`) or `p`, with
/// generators expanded in power sums.
pub fn basis_series<F: Scalar>(alg: &Algebra<F>, basis: Basis, max_n: u32) -> Series<F> {
    Series::from_fn(max_n, |k, n| {
        let mark = [Mark::Plain, Mark::Over, Mark::Under, Mark::Both][k];
        let sign = if k == 3 { -F::one() } else { F::one() };
        match basis {
            Basis::P => {
                if mark == Mark::Plain && n == 0 {
                    return AbstractPoly::zero(Basis::P);
                }
                let w: i64 = (n as i64 + 1..=n as i64 + mark.fermions() as i64).product();
                AbstractPoly::single(Basis::P, generator_index(mark, n), sign * F::from_int(w))
            }
            _ => alg
                .generator_in_p(basis, mark, n)
                .expect("h, e, g generators exist in every degree")
                .scale(&sign),
        }
    })
}

/// `1/(z_Λ ζ_Λ)` as a field element.
pub fn inverse_norm<F: Scalar>(sp: &SuperPartition) -> F {
    F::from_rational(Rational::one() / (z_norm(sp) * zeta_norm(sp)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat, RatFunc};
    use crate::spar::sp;

    type Q = Rational;

    #[test]
    fn inverse_roundtrip() {
        let mut m = Matrix::<Q>::zeros(3, 3);
        for (i, j, v) in [(0, 0, 2), (0, 1, 1), (1, 1, 3), (1, 2, -1), (2, 0, 1), (2, 2, 4)] {
            m.set(i, j, int(v));
        }
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(Matrix::<Q>::zeros(2, 2).inverse().is_none());
    }

    #[test]
    fn worked_example_conversions() {
        let alg = Algebra::<Q>::new(int(1));
        let f = AbstractPoly::single(Basis::M, sp("[2o,0o,0u]"), int(1));
        let p = alg.convert(&f, Basis::P);
        let want_p: Vec<(&str, Q)> = vec![("[2o,0o,0u]", int(1)), ("[2b,0o]", int(1)), ("[2o,0b]", int(-1))];
        assert_eq!(p.len(), want_p.len(), "{p}");
        for (s, c) in want_p {
            assert_eq!(p.coeff(&sp(s)), c, "p {s}");
        }
        let idx = [
            "[1o,1,0o,0u]", "[1o,1u,0o]", "[1,1,0b,0o]", "[1b,1,0o]", "[1o,1,0b]", "[2o,0o,0u]",
            "[2,0b,0o]", "[2b,0o]", "[2o,0b]",
        ];
        let h = alg.convert(&f, Basis::H);
        let hc = [rat(-8, 3), rat(-1, 3), rat(-2, 3), rat(-1, 3), int(1), rat(7, 3), rat(2, 3), rat(1, 3), int(-1)];
        assert_eq!(h.len(), 9, "{h}");
        for (s, c) in idx.iter().zip(hc) {
            assert_eq!(h.coeff(&sp(s)), c, "h {s}");
        }
        let e = alg.convert(&f, Basis::E);
        let ec = [rat(2, 3), rat(1, 3), rat(2, 3), rat(1, 3), int(-1), rat(-1, 3), rat(-2, 3), rat(-1, 3), int(1)];
        assert_eq!(e.len(), 9, "{e}");
        for (s, c) in idx.iter().zip(ec) {
            assert_eq!(e.coeff(&sp(s)), c, "e {s}");
        }
    }

    #[test]
    fn symbolic_alpha_specialises() {
        let sym = Algebra::new(RatFunc::var());
        let at2 = Algebra::new(int(2));
        let s = Sector::new(2, 1, 0);
        let a = sym.transition(s, Basis::G, Basis::M);
        let b = at2.transition(s, Basis::G, Basis::M);
        for i in 0..a.order.len() {
            for j in 0..a.order.len() {
                assert_eq!(a.matrix.get(i, j).eval(&int(2)).unwrap(), *b.matrix.get(i, j));
            }
        }
    }

    #[test]
    fn series_unit() {
        let alg = Algebra::<Q>::new(int(1));
        let h = basis_series(&alg, Basis::H, 3);
        let e = basis_series(&alg, Basis::E, 3);
        assert_eq!(h.mul(&e.negate_arguments()), Series::one(3));
    }
}
