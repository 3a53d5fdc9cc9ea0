//! Verification suites. Every identity is checked with exact equality and
//! reported, never asserted, so callers decide what a failure means.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::bases::{
    generator_in_m, generator_index, monomial_product, omega_exponent, power_sum_diagonal, z_norm,
    zeta_norm, AbstractPoly, Basis,
};
use crate::grassmann::{
    complete_explicit, elementary_explicit, extract_m_coeffs, extract_m_coeffs_with,
    generating_function_explicit, generator_explicit, master_operator_components, monomial_explicit,
    power_sum_explicit, split_tau, ExplicitPoly, GMonomial, GenKind, Lift, VarConfig,
};
use crate::report::Report;
use crate::scalar::{int, rat, Rational, Scalar};
use crate::spar::{
    count_sector_series, enumerate_sector, sectors_up_to, sp, weight_compare, Mark, Sector,
    SuperPartition, WeightOrder,
};
use crate::transforms::{basis_series, inverse_norm, Algebra, Matrix, Series};

const MARKS: [Mark; 4] = [Mark::Plain, Mark::Over, Mark::Under, Mark::Both];

fn compare_polys<F: Scalar>(r: &mut Report, key: &str, lhs: &AbstractPoly<F>, rhs: &AbstractPoly<F>) {
    let diff = lhs.sub(rhs);
    for s in diff.terms().keys() {
        r.fail(format!("{key} {s}"), lhs.coeff(s), rhs.coeff(s));
    }
}

fn compare_explicit<F: Scalar>(r: &mut Report, key: &str, lhs: &ExplicitPoly<F>, rhs: &ExplicitPoly<F>) {
    let diff = lhs.sub(rhs);
    for (m, _) in diff.terms().iter().take(8) {
        let mut unit = ExplicitPoly::<F>::zero(lhs.config());
        unit.add_term(m.clone(), F::one());
        r.fail(format!("{key} {unit}"), lhs.coeff(m), rhs.coeff(m));
    }
}

fn rational_poly(m: impl IntoIterator<Item = (SuperPartition, i64)>) -> AbstractPoly<Rational> {
    let mut r = AbstractPoly::zero(Basis::M);
    for (s, c) in m {
        r.add_term(s, int(c));
    }
    r
}

// ---------------------------------------------------------------------
// enumeration and products

/// Sector sizes against the counting series.
pub fn census(max_n: u32, max_over: u32, max_under: u32) -> Report {
    let mut r = Report::new("census", format!("n<={max_n},over<={max_over},under<={max_under}"));
    let series = count_sector_series(max_n, max_over, max_under);
    for s in sectors_up_to(max_n, max_over, max_under) {
        let got = enumerate_sector(s).len() as u128;
        r.expect_eq(s, &got, &series.get(s.n, s.over, s.under));
    }
    r
}

/// The product worked out by hand with filled diagrams.
pub fn golden_product() -> Report {
    let mut r = Report::new("golden-product", Sector::new(4, 2, 2));
    let got = rational_poly(monomial_product(&sp("[1o,1u,0u]"), &sp("[1o,0o]")));
    let want = rational_poly([
        (sp("[2b,1o,0b]"), -1),
        (sp("[2b,1o,0o,0u]"), -1),
        (sp("[1b,1o,1u,0o]"), -1),
        (sp("[1b,1b,1o]"), 2),
    ]);
    compare_polys(&mut r, "m", &got, &want);
    r
}

/// Operand pairs with `|Λ| + |Ω| <= max_total` and at most `max_fermions`
/// anticommuting factors in each operand.
pub fn product_pairs(max_total: u32, max_fermions: u32) -> Vec<(SuperPartition, SuperPartition)> {
    let mut ops = Vec::new();
    for s in sectors_up_to(max_total, max_fermions, max_fermions) {
        if s.fermions() <= max_fermions {
            ops.extend(enumerate_sector(s));
        }
    }
    let mut pairs = Vec::new();
    for a in &ops {
        for b in &ops {
            if a.size() + b.size() <= max_total {
                pairs.push((a.clone(), b.clone()));
            }
        }
    }
    pairs
}

fn product_sector(a: &SuperPartition, b: &SuperPartition) -> Sector {
    let (x, y) = (a.sector(), b.sector());
    Sector::new(x.n + y.n, x.over + y.over, x.under + y.under)
}

/// `m_Λ m_Ω` from filled diagrams against the explicit product, read off in
/// enough variables for every monomial of the product sector to survive.
pub fn product_oracle_pair(a: &SuperPartition, b: &SuperPartition) -> Report {
    let s = product_sector(a, b);
    let mut r = Report::new("product-oracle", s);
    let n_vars = s.max_length().max(1);
    let cfg = VarConfig::n2(n_vars);
    let explicit = monomial_explicit::<Rational>(a, cfg).mul(&monomial_explicit(b, cfg));
    let key = format!("m{a}*m{b}");
    match extract_m_coeffs(&explicit, s) {
        Ok(got) => compare_polys(&mut r, &key, &rational_poly(monomial_product(a, b)), &got),
        Err(e) => r.fail(key, "extraction", e),
    }
    r
}

/// Closed monomial expansion of one generator against its explicit form.
pub fn generator_oracle(basis: Basis, mark: Mark, n: u32) -> Report {
    let s = Sector::new(n, mark.has_over() as u32, mark.has_under() as u32);
    let mut r = Report::new("generator-oracle", s);
    let key = format!("{}{}", basis.name(), generator_index(mark, n));
    let cfg = VarConfig::n2(s.max_length().max(1));
    let closed = match generator_in_m::<Rational>(basis, mark, n) {
        Ok(c) => c,
        Err(e) => {
            r.fail(key, "closed form", e);
            return r;
        }
    };
    match generator_explicit(basis, mark, n, cfg).and_then(|f| extract_m_coeffs(&f, s)) {
        Ok(got) => compare_polys(&mut r, &key, &closed, &got),
        Err(e) => r.fail(key, "explicit", e),
    }
    r
}

/// `g` generators from the expansion of `Π (1 - u_i)^{-1/α}` against the
/// ones assembled from power sums.
pub fn jack_generator_oracle(alpha: &Rational, max_n: u32) -> Report {
    let mut r = Report::new(format!("g-generator-oracle alpha={alpha}"), format!("n<={max_n}"));
    let n_vars = Sector::new(max_n, 1, 1).max_length().max(1);
    let gf = generating_function_explicit(&GenKind::Jack(Rational::from_int(1) / alpha.clone()), n_vars, max_n);
    let comps = split_tau(&gf);
    let alg = Algebra::new(alpha.clone());
    for (k, &mark) in MARKS.iter().enumerate() {
        for n in 0..=max_n {
            let s = Sector::new(n, mark.has_over() as u32, mark.has_under() as u32);
            let part = comps[k].filter(|m| m.degree() == n);
            let key = format!("g{}", generator_index(mark, n));
            let want = alg.generator_in_m(Basis::G, mark, n).expect("g generators exist");
            let want = if k == 3 { want.scale(&int(-1)) } else { want };
            match extract_m_coeffs(&part, s) {
                Ok(got) => compare_polys(&mut r, &key, &got, &want),
                Err(e) => r.fail(key, "extraction", e),
            }
        }
    }
    r
}

// ---------------------------------------------------------------------
// worked example

/// The explicit polynomial in three variables whose expansions are printed
/// in the worked example.
pub fn worked_example_polynomial() -> ExplicitPoly<Rational> {
    let cfg = VarConfig::n2(3);
    let term = |c: i64, x: [u32; 3], gens: [(usize, usize); 3]| {
        let mut f = ExplicitPoly::one(cfg).scale(&int(c));
        for (v, slot) in gens {
            f = f.mul(&ExplicitPoly::fermion(cfg, v, slot));
        }
        for (v, &e) in x.iter().enumerate() {
            for _ in 0..e {
                f = f.mul(&ExplicitPoly::x(cfg, v));
            }
        }
        f
    };
    let (phi, th) = (|v| (v, 0), |v| (v, 1));
    term(1, [2, 0, 0], [phi(0), phi(1), th(2)])
        .add(&term(1, [2, 0, 0], [phi(0), phi(2), th(1)]))
        .add(&term(1, [0, 2, 0], [phi(1), phi(2), th(0)]))
        .add(&term(-1, [0, 2, 0], [phi(0), phi(1), th(2)]))
        .add(&term(-1, [0, 0, 2], [phi(0), phi(2), th(1)]))
        .add(&term(-1, [0, 0, 2], [phi(1), phi(2), th(0)]))
}

/// The worked example: `f` in `p`, `h` and `e`.
pub fn worked_example() -> Report {
    let s = Sector::new(2, 2, 1);
    let mut r = Report::new("worked-example", s);
    let f = worked_example_polynomial();
    let in_m = match extract_m_coeffs_with(&f, s, Lift::Minimal) {
        Ok(m) => m,
        Err(e) => {
            r.fail("extraction", e, "");
            return r;
        }
    };
    let alg = Algebra::new(int(1));
    let build = |basis: Basis, terms: &[(&str, Rational)]| {
        let mut p = AbstractPoly::zero(basis);
        for (s, c) in terms {
            p.add_term(sp(s), c.clone());
        }
        p
    };
    let want_p = build(
        Basis::P,
        &[("[2o,0o,0u]", int(1)), ("[2b,0o]", int(1)), ("[2o,0b]", int(-1))],
    );
    let idx = [
        "[1o,1,0o,0u]", "[1o,1u,0o]", "[1,1,0b,0o]", "[1b,1,0o]", "[1o,1,0b]", "[2o,0o,0u]",
        "[2,0b,0o]", "[2b,0o]", "[2o,0b]",
    ];
    let hc = [rat(-8, 3), rat(-1, 3), rat(-2, 3), rat(-1, 3), int(1), rat(7, 3), rat(2, 3), rat(1, 3), int(-1)];
    let ec = [rat(2, 3), rat(1, 3), rat(2, 3), rat(1, 3), int(-1), rat(-1, 3), rat(-2, 3), rat(-1, 3), int(1)];
    let zip = |c: [Rational; 9]| idx.iter().copied().zip(c).collect::<Vec<_>>();
    let want_h = build(Basis::H, &zip(hc));
    let want_e = build(Basis::E, &zip(ec));
    compare_polys(&mut r, "p", &alg.convert(&in_m, Basis::P), &want_p);
    compare_polys(&mut r, "h", &alg.convert(&in_m, Basis::H), &want_h);
    compare_polys(&mut r, "e", &alg.convert(&in_m, Basis::E), &want_e);
    r
}

// ---------------------------------------------------------------------
// duality and triangularity

/// `⟨m_Λ^⊤ | b_Ω⟩_α` for all `Λ, Ω` in the sector.
pub fn gram<F: Scalar>(alg: &Algebra<F>, s: Sector, basis: Basis) -> Matrix<F> {
    let a = alg.from_m_matrix(s, Basis::P);
    let b = alg.transition(s, basis, Basis::P);
    let w: Vec<F> = a
        .order
        .iter()
        .map(|l| F::from_rational(z_norm(l) * zeta_norm(l)) * alg.alpha().powi(l.len() as i32))
        .collect();
    let d = a.order.len();
    let mut g = Matrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            let mut acc = F::zero();
            for (k, wk) in w.iter().enumerate() {
                let (x, y) = (a.matrix.get(i, k), b.matrix.get(j, k));
                if !x.is_zero() && !y.is_zero() {
                    acc = acc + x.clone() * y.clone() * wk.clone();
                }
            }
            g.set(i, j, acc);
        }
    }
    g
}

/// `m` is dual to `basis` under the scalar product of `alg`.
pub fn duality<F: Scalar>(alg: &Algebra<F>, s: Sector, basis: Basis) -> Report {
    let mut r = Report::new(format!("duality m/{}", basis.name()), s);
    let g = gram(alg, s, basis);
    let order = enumerate_sector(s);
    for (i, l) in order.iter().enumerate() {
        for (j, o) in order.iter().enumerate() {
            let want = if i == j { F::one() } else { F::zero() };
            r.expect_eq(format!("<m{l}|{}{o}>", basis.name()), g.get(i, j), &want);
        }
    }
    r
}

/// `p_Λ = a_Λ m_Λ + Σ_{Γ > Λ} (…) m_Γ`.
pub fn triangularity(alg: &Algebra<Rational>, s: Sector) -> Report {
    let mut r = Report::new("triangularity", s);
    let t = alg.to_m_matrix(s, Basis::P);
    for (i, lam) in t.order.iter().enumerate() {
        for (j, gam) in t.order.iter().enumerate() {
            let v = t.matrix.get(i, j);
            if i == j {
                r.expect_eq(format!("diag {lam}"), v, &int(power_sum_diagonal(lam)));
            } else if !v.is_zero() && weight_compare(gam, lam) != WeightOrder::Greater {
                r.fail(format!("p{lam} -> m{gam}"), v, "0");
            }
        }
    }
    let inv = alg.from_m_matrix(s, Basis::P);
    if !t.matrix.mul(&inv.matrix).is_identity() {
        r.fail("M(p,m)M(m,p)", "not identity", "identity");
    }
    r
}

// ---------------------------------------------------------------------
// involutions

/// `ω̂² = 1` on a sector, as the matrix `M(m,e) M(h,m)` squared.
pub fn involution_squared(alg: &Algebra<Rational>, s: Sector) -> Report {
    let mut r = Report::new("involution-squared", s);
    let w = alg
        .from_m_matrix(s, Basis::E)
        .matrix
        .mul(&alg.to_m_matrix(s, Basis::H).matrix);
    if !w.mul(&w).is_identity() {
        r.fail("omega^2", "not identity", "identity");
    }
    r
}

/// `ω̂(h) = e` on every generator up to degree `max_n`, both sides in `m`.
pub fn involution_generators(alg: &Algebra<Rational>, max_n: u32) -> Report {
    let mut r = Report::new("involution-generators", format!("n<={max_n}"));
    for mark in MARKS {
        for n in 0..=max_n {
            let h = alg.generator_in_m(Basis::H, mark, n).expect("h generators exist");
            let e = alg.generator_in_m(Basis::E, mark, n).expect("e generators exist");
            compare_polys(&mut r, &format!("omega(h{})", generator_index(mark, n)), &alg.omega_hat(&h), &e);
        }
    }
    r
}

/// `ω̂(p_Λ) = (-1)^{|Λ| - ℓ(b) - ℓ(plain)} p_Λ`.
pub fn involution_power_sums(alg: &Algebra<Rational>, s: Sector) -> Report {
    let mut r = Report::new("involution-power-sums", s);
    for lam in enumerate_sector(s) {
        let p = AbstractPoly::single(Basis::P, lam.clone(), int(1));
        let sign = if omega_exponent(&lam).rem_euclid(2) == 1 { -1 } else { 1 };
        let want = p.scale(&int(sign));
        compare_polys(&mut r, &format!("omega(p{lam})"), &alg.omega_hat(&p), &want);
    }
    r
}

/// `ω̂_α(g_Λ) = e_Λ` on a sector.
pub fn alpha_involution<F: Scalar>(alg: &Algebra<F>, s: Sector) -> Report {
    let mut r = Report::new(format!("alpha-involution alpha={}", alg.alpha()), s);
    for lam in enumerate_sector(s) {
        let g = AbstractPoly::single(Basis::G, lam.clone(), F::one());
        let got = alg.convert(&alg.omega_alpha(&g), Basis::E);
        let want = AbstractPoly::single(Basis::E, lam.clone(), F::one());
        compare_polys(&mut r, &format!("omega_alpha(g{lam})"), &got, &want);
    }
    r
}

// ---------------------------------------------------------------------
// kernel

/// Power sum `p_Λ` in explicit variables.
pub fn power_sum_product_explicit<F: Scalar>(lam: &SuperPartition, cfg: VarConfig) -> ExplicitPoly<F> {
    lam.parts().iter().fold(ExplicitPoly::one(cfg), |acc, p| {
        acc.mul(&power_sum_explicit(p.value, crate::grassmann::mark_slots(p.mark), cfg))
    })
}

/// `Π_{i,j} (1 - x_i y_j - φ_i τ̄_j - θ_i τ̲_j)^{-1/α}` against
/// `Σ_Λ (-1)^{binom(k,2)} α^{-ℓ} (z ζ)^{-1} p_Λ(x,φ,θ) p_Λ(y,τ̄,τ̲)`,
/// with `n` variables per side, `x` degree at most `max_degree` and at most
/// `per_family` fermions of each kind on the `x` side.
pub fn kernel<F: Scalar>(alpha: &F, n: usize, max_degree: u32, per_family: u32) -> Report {
    let mut r = Report::new(
        format!("kernel alpha={alpha}"),
        format!("deg<={max_degree},fermions<={per_family},vars={n}+{n}"),
    );
    let cfg = VarConfig::n2(2 * n);
    let side = VarConfig::n2(n);
    let (phi_x, th_x) = (
        side.slot_mask(0),
        side.slot_mask(1),
    );
    let keep = |m: &GMonomial| {
        m.x[..n].iter().sum::<u32>() <= max_degree
            && (m.fermions & phi_x).count_ones() <= per_family
            && (m.fermions & th_x).count_ones() <= per_family
    };
    let beta = F::one() / alpha.clone();
    let top = (max_degree + 2 * per_family) as usize;
    let mut coef = vec![F::one()];
    for j in 0..top {
        let next = coef[j].clone() * (beta.clone() + F::from_int(j as i64)) / F::from_int(j as i64 + 1);
        coef.push(next);
    }
    let mut lhs = ExplicitPoly::one(cfg);
    for i in 0..n {
        for j in 0..n {
            let y = n + j;
            let u = ExplicitPoly::<F>::x(cfg, i)
                .mul(&ExplicitPoly::x(cfg, y))
                .add(&ExplicitPoly::fermion(cfg, i, 0).mul(&ExplicitPoly::fermion(cfg, y, 0)))
                .add(&ExplicitPoly::fermion(cfg, i, 1).mul(&ExplicitPoly::fermion(cfg, y, 1)));
            let mut pow = ExplicitPoly::one(cfg);
            let mut series = ExplicitPoly::zero(cfg);
            for c in &coef {
                series = series.add(&pow.scale(c));
                pow = pow.mul_filtered(&u, keep);
            }
            lhs = lhs.mul_filtered(&series, keep);
        }
    }
    let mut rhs = ExplicitPoly::zero(cfg);
    for s in sectors_up_to(max_degree, per_family, per_family) {
        for lam in enumerate_sector(s) {
            let p = power_sum_product_explicit::<F>(&lam, side);
            let mut c = inverse_norm::<F>(&lam) * alpha.powi(-(lam.len() as i32));
            if s.top_sign_negative() {
                c = -c;
            }
            let term = p.embed(2 * n, 0).mul_filtered(&p.embed(2 * n, n), keep);
            rhs = rhs.add(&term.scale(&c));
        }
    }
    compare_explicit(&mut r, "coefficient", &lhs, &rhs);
    r
}

// ---------------------------------------------------------------------
// generating functions

/// `HE = 1`, `HP = 𝒪H` and `E P(-) = -𝒪E` to order `t^max_n`, with `𝒪`
/// the Euler operator in `t, τ̄, τ̲`.
pub fn genfun_identities(alg: &Algebra<Rational>, max_n: u32) -> Report {
    let mut r = Report::new("generating-functions", format!("t^{max_n}"));
    let h = basis_series(alg, Basis::H, max_n);
    let e = basis_series(alg, Basis::E, max_n);
    let p = basis_series(alg, Basis::P, max_n);
    let mut cmp = |name: &str, a: &Series<Rational>, b: &Series<Rational>| {
        for k in 0..4 {
            for n in 0..=max_n as usize {
                compare_polys(&mut r, &format!("{name} comp{k} t^{n}"), &a.comps[k][n], &b.comps[k][n]);
            }
        }
    };
    cmp("HE", &h.mul(&e.negate_arguments()), &Series::one(max_n));
    cmp("HP", &h.mul(&p), &h.euler());
    cmp("EP", &e.mul(&p.negate_arguments()), &e.euler().scale(&int(-1)));
    r
}

/// All rows of the table relating `h`, `e` and `p`, plus the variants with
/// the single fermion under instead of over, for `n <= max_n`.
pub fn table2(alg: &Algebra<Rational>, max_n: u32) -> Report {
    use crate::bases::mul_free as m;
    let mut r = Report::new("table2", format!("n<={max_n}"));
    let g = |b: Basis, mark: Mark, k: u32| -> AbstractPoly<Rational> {
        if b == Basis::P && mark == Mark::Plain && k == 0 {
            AbstractPoly::zero(Basis::P)
        } else {
            alg.generator_in_p(b, mark, k).expect("generator")
        }
    };
    let (pl, ov, un, bo) = (Mark::Plain, Mark::Over, Mark::Under, Mark::Both);
    let (h, e, p) = (Basis::H, Basis::E, Basis::P);
    let q = |k: i64| int(k);
    let sgn = |r: u32| if r % 2 == 1 { int(-1) } else { int(1) };
    for n in 0..=max_n {
        let zero = AbstractPoly::zero(Basis::P);
        let mut rows: Vec<(String, AbstractPoly<Rational>, AbstractPoly<Rational>)> = Vec::new();
        let sum = |f: &dyn Fn(u32) -> AbstractPoly<Rational>, from: u32| {
            (from..=n).fold(AbstractPoly::zero(Basis::P), |a, k| a.add(&f(k)))
        };
        if n >= 1 {
            rows.push(("A1".into(), sum(&|k| m(&g(e, pl, k), &g(h, pl, n - k)).scale(&sgn(k)), 0), zero.clone()));
        }
        for (name, mk) in [("A2", ov), ("A2u", un)] {
            rows.push((
                name.into(),
                sum(&|k| m(&g(e, pl, k), &g(h, mk, n - k)).sub(&m(&g(e, mk, k), &g(h, pl, n - k))).scale(&sgn(k)), 0),
                zero.clone(),
            ));
        }
        rows.push((
            "A3".into(),
            sum(
                &|k| {
                    m(&g(e, bo, k), &g(h, pl, n - k))
                        .sub(&m(&g(h, ov, n - k), &g(e, un, k)))
                        .sub(&m(&g(e, ov, k), &g(h, un, n - k)))
                        .add(&m(&g(e, pl, k), &g(h, bo, n - k)))
                        .scale(&sgn(k))
                },
                0,
            ),
            zero.clone(),
        ));
        rows.push((
            "B1".into(),
            g(h, pl, n).scale(&q(n as i64)),
            sum(&|k| m(&g(p, pl, k), &g(h, pl, n - k)), 1),
        ));
        for (name, mk) in [("B2", ov), ("B2u", un)] {
            rows.push((
                name.into(),
                g(h, mk, n).scale(&q(n as i64 + 1)),
                sum(
                    &|k| m(&g(p, pl, k), &g(h, mk, n - k)).add(&m(&g(p, mk, k), &g(h, pl, n - k)).scale(&q(k as i64 + 1))),
                    0,
                ),
            ));
        }
        rows.push((
            "B3".into(),
            g(h, bo, n).scale(&q(n as i64 + 2)),
            sum(
                &|k| {
                    let kk = k as i64;
                    m(&g(p, pl, k), &g(h, bo, n - k))
                        .add(&m(&g(p, ov, k), &g(h, un, n - k)).add(&m(&g(h, ov, n - k), &g(p, un, k))).scale(&q(kk + 1)))
                        .add(&m(&g(p, bo, k), &g(h, pl, n - k)).scale(&q((kk + 2) * (kk + 1))))
                },
                0,
            ),
        ));
        let osg = |k: u32| sgn(k + 1);
        rows.push((
            "C1".into(),
            g(e, pl, n).scale(&q(n as i64)),
            sum(&|k| m(&g(p, pl, k), &g(e, pl, n - k)).scale(&osg(k)), 1),
        ));
        for (name, mk) in [("C2", ov), ("C2u", un)] {
            rows.push((
                name.into(),
                g(e, mk, n).scale(&q(n as i64 + 1)),
                sum(
                    &|k| {
                        m(&g(p, pl, k), &g(e, mk, n - k))
                            .sub(&m(&g(p, mk, k), &g(e, pl, n - k)).scale(&q(k as i64 + 1)))
                            .scale(&osg(k))
                    },
                    0,
                ),
            ));
        }
        rows.push((
            "C3".into(),
            g(e, bo, n).scale(&q(n as i64 + 2)),
            sum(
                &|k| {
                    let kk = k as i64;
                    m(&g(p, pl, k), &g(e, bo, n - k))
                        .sub(&m(&g(p, ov, k), &g(e, un, n - k)).add(&m(&g(e, ov, n - k), &g(p, un, k))).scale(&q(kk + 1)))
                        .add(&m(&g(p, bo, k), &g(e, pl, n - k)).scale(&q((kk + 2) * (kk + 1))))
                        .scale(&osg(k))
                },
                0,
            ),
        ));
        for (name, lhs, rhs) in rows {
            compare_polys(&mut r, &format!("{name} n={n}"), &lhs, &rhs);
        }
    }
    r
}

/// Which classical series feeds the explicit generating-function check.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Family {
    Complete,
    Elementary,
    PowerSum,
}

/// `(1 + D̄)(1 + D̲) F(tx) = F(tx + τ̄φ + τ̲θ)` for `t^n`, `n <= max_n`.
pub fn master_operator(family: Family, n_vars: usize, max_n: u32) -> Report {
    let mut r = Report::new(format!("master-operator {family:?}"), format!("t^{max_n},vars={n_vars}"));
    let kind = match family {
        Family::Complete => GenKind::Complete,
        Family::Elementary => GenKind::Elementary,
        Family::PowerSum => GenKind::PowerSum,
    };
    let comps = split_tau(&generating_function_explicit::<Rational>(&kind, n_vars, max_n));
    let cfg = VarConfig::n2(n_vars);
    let classical = |k: u32| match family {
        Family::Complete => complete_explicit(k, cfg),
        Family::Elementary => elementary_explicit(k, cfg),
        Family::PowerSum if k == 0 => ExplicitPoly::zero(cfg),
        Family::PowerSum => power_sum_explicit(k, 0, cfg),
    };
    for n in 0..=max_n {
        let want = master_operator_components(&classical, n);
        for k in 0..4 {
            let got = comps[k].filter(|m| m.degree() == n);
            compare_explicit(&mut r, &format!("comp{k} t^{n}"), &got, &want[k]);
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::RatFunc;

    #[test]
    fn small_suites_pass() {
        let alg = Algebra::new(int(1));
        let mut reports = vec![census(4, 2, 2), golden_product(), worked_example()];
        reports.push(table2(&alg, 3));
        reports.push(genfun_identities(&alg, 3));
        reports.push(involution_generators(&alg, 2));
        for s in sectors_up_to(2, 1, 1) {
            reports.push(triangularity(&alg, s));
            reports.push(duality(&alg, s, Basis::H));
            reports.push(involution_squared(&alg, s));
            reports.push(involution_power_sums(&alg, s));
        }
        for r in &reports {
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn g_dual_and_involution_small() {
        let s = Sector::new(1, 1, 1);
        let alg = Algebra::new(rat(1, 3));
        assert!(duality(&alg, s, Basis::G).passed());
        assert!(alpha_involution(&alg, s).passed());
        let sym = Algebra::new(RatFunc::var());
        assert!(duality(&sym, s, Basis::G).passed());
    }

    #[test]
    fn small_oracles_pass() {
        for (a, b) in product_pairs(2, 1) {
            let r = product_oracle_pair(&a, &b);
            assert!(r.passed(), "{r:?}");
        }
        for basis in [Basis::P, Basis::H, Basis::E] {
            for mark in MARKS {
                for n in 0..=2 {
                    if basis == Basis::P && mark == Mark::Plain && n == 0 {
                        continue;
                    }
                    let r = generator_oracle(basis, mark, n);
                    assert!(r.passed(), "{r:?}");
                }
            }
        }
        let r = jack_generator_oracle(&int(2), 2);
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn small_kernel_and_master_operator() {
        let r = kernel(&int(1), 2, 1, 1);
        assert!(r.passed(), "{r:?}");
        let r = kernel(&int(2), 2, 1, 1);
        assert!(r.passed(), "{r:?}");
        for f in [Family::Complete, Family::Elementary, Family::PowerSum] {
            let r = master_operator(f, 2, 2);
            assert!(r.passed(), "{r:?}");
        }
    }
}
