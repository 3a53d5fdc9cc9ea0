//! Verification suites run in parallel. Reports always come back in the
//! order the work was listed, whatever order threads finish in.

use rayon::prelude::*;
use supersym_core::checks::{self, Family};
use supersym_core::generic;
use supersym_core::report::Report;
use supersym_core::scalar::{int, rat};
use supersym_core::spar::{sectors_up_to, Mark, Sector};
use supersym_core::transforms::Algebra;
use supersym_core::{Basis, RatFunc, Rational};

use crate::input::Alpha;

/// Suites reachable from `verify`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Suite {
    Kernel,
    Duality,
    Involution,
    Triangularity,
    Table2,
    GenericN,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Kernel,
        Suite::Duality,
        Suite::Involution,
        Suite::Triangularity,
        Suite::Table2,
        Suite::GenericN,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Kernel => "kernel",
            Suite::Duality => "duality",
            Suite::Involution => "involution",
            Suite::Triangularity => "triangularity",
            Suite::Table2 => "table2",
            Suite::GenericN => "generic-n",
        }
    }

    pub fn from_name(s: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|x| x.name() == s)
    }
}

/// Runs one suite at `bound`. `alpha` replaces the default sample points
/// where the suite is α-dependent.
pub fn run(suite: Suite, bound: u32, alpha: Option<&Alpha>) -> Vec<Report> {
    match suite {
        Suite::Kernel => kernel(bound, alpha),
        Suite::Duality => duality(bound, alpha),
        Suite::Involution => involution(bound, alpha),
        Suite::Triangularity => triangularity(bound),
        Suite::Table2 => table2(bound),
        Suite::GenericN => generic_n(bound),
    }
}

fn samples(alpha: Option<&Alpha>, default: &[Rational]) -> (Vec<Rational>, bool) {
    match alpha {
        None => (default.to_vec(), false),
        Some(Alpha::Value(q)) => (vec![q.clone()], false),
        Some(Alpha::Symbolic) => (Vec::new(), true),
    }
}

fn two_family(bound: u32) -> Vec<Sector> {
    sectors_up_to(bound, 2, 2)
}

/// `m_Λ m_Ω` against the explicit oracle for every pair in range.
pub fn products(max_total: u32, max_fermions: u32) -> Vec<Report> {
    checks::product_pairs(max_total, max_fermions)
        .par_iter()
        .map(|(a, b)| checks::product_oracle_pair(a, b))
        .collect()
}

/// Closed generator expansions against explicit ones, `n <= max_n`.
pub fn generators(max_n: u32) -> Vec<Report> {
    let mut jobs = Vec::new();
    for basis in [Basis::P, Basis::H, Basis::E] {
        for mark in Mark::ALL {
            for n in 0..=max_n {
                if !(basis == Basis::P && mark == Mark::Plain && n == 0) {
                    jobs.push((basis, mark, n));
                }
            }
        }
    }
    jobs.par_iter().map(|&(b, m, n)| checks::generator_oracle(b, m, n)).collect()
}

/// Reproducing kernel with `x` degree at most `bound` and one fermion of
/// each kind. The identity holds in any number of variables; the alphabet is
/// capped at three per side to keep the explicit expansion tractable.
pub fn kernel(bound: u32, alpha: Option<&Alpha>) -> Vec<Report> {
    let n = (bound as usize + 1).min(3);
    let (alphas, symbolic) = samples(alpha, &[int(1), int(2)]);
    let mut out: Vec<Report> = alphas.par_iter().map(|a| checks::kernel(a, n, bound, 1)).collect();
    if symbolic {
        out.push(checks::kernel(&RatFunc::var(), n, bound, 1));
    }
    out
}

/// `m`/`h` duality on every sector with `n <= bound` and at most two
/// fermions of each kind; `m`/`g` duality under the α-product on sectors
/// with at most one of each.
pub fn duality(bound: u32, alpha: Option<&Alpha>) -> Vec<Report> {
    let one = Algebra::new(int(1));
    let mut out: Vec<Report> = two_family(bound)
        .par_iter()
        .map(|&s| checks::duality(&one, s, Basis::H))
        .collect();
    let g_sectors = sectors_up_to(bound, 1, 1);
    let (alphas, symbolic) = samples(alpha, &[int(2), rat(1, 3), rat(5, 7)]);
    for a in alphas {
        let alg = Algebra::new(a);
        out.extend(g_sectors.par_iter().map(|&s| checks::duality(&alg, s, Basis::G)).collect::<Vec<_>>());
    }
    if symbolic {
        let alg = Algebra::new(RatFunc::var());
        out.extend(g_sectors.par_iter().map(|&s| checks::duality(&alg, s, Basis::G)).collect::<Vec<_>>());
    }
    out
}

/// `ω̂² = 1`, `ω̂` on generators and power sums for `n <= bound`, and
/// `ω̂_α g = e` on sectors with at most one fermion of each kind.
pub fn involution(bound: u32, alpha: Option<&Alpha>) -> Vec<Report> {
    let one = Algebra::new(int(1));
    let sectors = two_family(bound);
    let mut out: Vec<Report> = sectors
        .par_iter()
        .flat_map_iter(|&s| [checks::involution_squared(&one, s), checks::involution_power_sums(&one, s)])
        .collect();
    out.push(checks::involution_generators(&one, bound));
    let g_sectors = sectors_up_to(bound, 1, 1);
    let (alphas, symbolic) = samples(alpha, &[int(2)]);
    for a in alphas {
        let alg = Algebra::new(a);
        out.extend(g_sectors.par_iter().map(|&s| checks::alpha_involution(&alg, s)).collect::<Vec<_>>());
    }
    if symbolic {
        let alg = Algebra::new(RatFunc::var());
        out.extend(g_sectors.par_iter().map(|&s| checks::alpha_involution(&alg, s)).collect::<Vec<_>>());
    }
    out
}

pub fn triangularity(bound: u32) -> Vec<Report> {
    let one = Algebra::new(int(1));
    two_family(bound).par_iter().map(|&s| checks::triangularity(&one, s)).collect()
}

/// The `h`/`e`/`p` recursions, the generating-function identities, and the
/// explicit master-operator expansions in three variables.
pub fn table2(bound: u32) -> Vec<Report> {
    let one = Algebra::new(int(1));
    let jobs: Vec<u8> = (0..5).collect();
    jobs.par_iter()
        .map(|&j| match j {
            0 => checks::table2(&one, bound),
            1 => checks::genfun_identities(&one, bound),
            2 => checks::master_operator(Family::Complete, 3, bound),
            3 => checks::master_operator(Family::Elementary, 3, bound),
            _ => checks::master_operator(Family::PowerSum, 3, bound),
        })
        .collect()
}

/// Size bound used for the explicit `𝒩 = 3` checks at a given suite bound.
pub fn generic_size(bound: u32) -> u32 {
    bound.div_ceil(3)
}

/// `𝒩 = 2` specialization and norm reductions for `n <= bound`, then the
/// `𝒩 = 3` duality and kernel with at most two fermions in total.
pub fn generic_n(bound: u32) -> Vec<Report> {
    let one = Algebra::new(int(1));
    let sectors = two_family(bound);
    let mut out: Vec<Report> = sectors.par_iter().map(|&s| generic::specialization(&one, s)).collect();
    out.push(generic::norm_reductions(&sectors));
    out.push(generic::printed_example());
    let g = generic_size(bound);
    out.extend(
        generic::n_sectors(3, g, 2)
            .par_iter()
            .map(generic::n_duality)
            .collect::<Vec<_>>(),
    );
    out.push(generic::n_kernel(3, g as usize + 2, g, 2));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_roundtrip() {
        for s in Suite::ALL {
            assert_eq!(Suite::from_name(s.name()), Some(s));
        }
    }

    #[test]
    fn small_bounds_pass() {
        for s in Suite::ALL {
            let reports = run(s, 1, None);
            assert!(reports.iter().all(Report::passed), "{}", s.name());
        }
    }
}
