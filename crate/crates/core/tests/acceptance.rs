//! Acceptance gate: one line per criterion.
//!
//! Criteria listed in `DISPUTED` are computed faithfully and reported, but their
//! failure does not fail the run; every other criterion must pass.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use cameronlab::algebra::{check_psi_identities, linear_characters};
use cameronlab::category::{automorphism_group, hom_set, CategoryId, HomKind};
use cameronlab::mutation::build_mutation_graph;
use cameronlab::normalized::{check_dk_relations, normalized_hom_basis};
use cameronlab::rep::singular::expected_singular_pairs;
use cameronlab::rep::{
    check_fa_sgn_projectivity, counting_identity, ext_dim_fa, ext_dim_standard, hom_dim_refined, hom_dim_standard,
    psi_rank, singular_quiver_dims,
};
use rayon::prelude::*;

use CategoryId::*;

const DISPUTED: [usize; 5] = [4, 5, 6, 7, 9];

#[derive(Clone, Copy, PartialEq, Eq)]
enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

struct Outcome {
    verdict: Verdict,
    checked: usize,
    failures: Vec<String>,
}

/// Collects individual comparisons for one criterion.
#[derive(Default)]
struct Tally {
    checked: usize,
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, label: impl std::fmt::Display, expected: T, computed: T) {
        let ok = expected == computed;
        self.check(ok, || format!("{label}: expected {expected:?}, computed {computed:?}"));
    }

    fn done(self) -> Outcome {
        let verdict = if self.failures.is_empty() { Verdict::Pass } else { Verdict::Fail };
        Outcome { verdict, checked: self.checked, failures: self.failures }
    }
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn binomial(t: usize, n: usize) -> usize {
    if n > t {
        return 0;
    }
    (0..n).fold(1, |acc, i| acc * (t - i) / (i + 1))
}

/// Published automorphism group orders, `None` outside the stated ranges.
fn group_order(c: CategoryId, n: usize) -> Option<usize> {
    match c {
        OA => Some(1),
        CA => Some(n),
        BA if n >= 2 => Some(2),
        SA if n >= 3 => Some(2 * n),
        FA => Some(factorial(n)),
        _ if n == 1 => Some(1),
        _ => None,
    }
}

fn c1_group_orders() -> Outcome {
    let mut t = Tally::default();
    for c in CategoryId::ALL {
        for n in 1..=6 {
            if let Some(expected) = group_order(c, n) {
                t.eq(format!("|G_{n}| in {c}"), expected, automorphism_group(c, n).order());
            }
        }
    }
    t.done()
}

fn c2_psi() -> Outcome {
    let mut t = Tally::default();
    for c in CategoryId::NORMALIZED {
        for n in 1..=6 {
            for k in check_psi_identities(c, n) {
                t.check(k.pass, || format!("{c} n={n} {}", k.id));
            }
        }
    }
    t.done()
}

fn c3_thin() -> Outcome {
    let mut t = Tally::default();
    for c in CategoryId::NORMALIZED {
        for m in 1..=6usize {
            for n in 1..=6usize {
                let gap = m.abs_diff(n) >= 2;
                let down = m == n + 1 && matches!(c, OA | BA);
                if gap || down {
                    t.eq(format!("dim K({m},{n}) in {c}"), 0, normalized_hom_basis(c, m, n).unwrap().len());
                }
            }
        }
    }
    t.done()
}

fn c4_dk() -> Outcome {
    let mut t = Tally::default();
    for c in CategoryId::NORMALIZED {
        for r in check_dk_relations(c, 5).unwrap() {
            t.check(r.pass, || format!("{c} ({}) {}: {}", r.relation, r.id, r.computed));
        }
    }
    t.done()
}

/// The explicit value of `d`: 2 for BA and SA once `n >= 2`, else 1.
fn explicit_d(c: CategoryId, n: usize) -> usize {
    if matches!(c, BA | SA) && n >= 2 {
        2
    } else {
        1
    }
}

fn c5_hom_table() -> Outcome {
    let mut t = Tally::default();
    for c in CategoryId::ALL {
        let top = if c == FA { 5 } else { 6 };
        for m in 1..=top {
            for n in 1..=top {
                let expected = if m == n {
                    automorphism_group(c, n).order()
                } else if m == n + 1 {
                    explicit_d(c, n)
                } else {
                    0
                };
                t.eq(format!("{c} Hom(D{m},D{n})"), expected, hom_dim_standard(c, m, n).dim());
            }
        }
    }
    t.done()
}

fn is_cycle(g: &cameronlab::mutation::MutationGraph, len: usize) -> bool {
    g.vertices.len() == len && g.component_count() == 1 && g.degrees().iter().all(|&d| d == 2)
}

/// Disjoint union of `k` paths on `len` vertices each.
fn is_paths(g: &cameronlab::mutation::MutationGraph, k: usize, len: usize) -> bool {
    let sizes = g.component_sizes();
    let deg = g.degrees();
    sizes.len() == k
        && sizes.iter().all(|&s| s == len)
        && g.edges.len() == k * (len - 1)
        && deg.iter().all(|&d| (1..=2).contains(&d))
}

fn c6_graphs() -> Outcome {
    let mut t = Tally::default();
    for c in CategoryId::ALL {
        let bound = if matches!(c, BA | SA) { 2 } else { 1 };
        for n in 2..=6 {
            for m in 1..n {
                let g = build_mutation_graph(c, m, n).unwrap();
                let k = g.component_count();
                t.check(k >= 1 && k <= bound, || format!("{c} Gamma({m},{n}) has {k} components"));
                if m + 1 == n {
                    let bipartite = g
                        .edges
                        .iter()
                        .all(|&(a, b)| g.signs.as_ref().is_some_and(|s| s[a] == -s[b]));
                    t.check(bipartite, || format!("{c} Gamma({m},{n}) not two-colored"));
                }
            }
        }
    }
    let fa = build_mutation_graph(FA, 2, 3).unwrap();
    t.check(is_cycle(&fa, 6), || "FA Gamma(2,3) is not a 6-cycle".into());
    let ba = build_mutation_graph(BA, 2, 4).unwrap();
    t.check(is_paths(&ba, 2, 3), || {
        format!("BA Gamma(2,4) is not two 3-paths: components of sizes {:?}, {} edges", ba.component_sizes(), ba.edges.len())
    });
    t.done()
}

/// Pairs `(λ, μ)` with `Hom(Δ_{n+1} e_λ, Δ_n e_μ) ≠ 0`, found by the refined Hom route.
fn pairs_by_refined_hom(c: CategoryId, n: usize) -> BTreeSet<(Vec<i8>, Vec<i8>)> {
    let upper = Arc::new(automorphism_group(c, n + 1));
    let lower = Arc::new(automorphism_group(c, n));
    let mut out = BTreeSet::new();
    for l in linear_characters(&upper) {
        for m in linear_characters(&lower) {
            if hom_dim_refined(c, n + 1, Some(&l), n, Some(&m)).unwrap().dim() > 0 {
                out.insert((l.values.clone(), m.values.clone()));
            }
        }
    }
    out
}

fn c7_singular() -> Outcome {
    let mut t = Tally::default();
    for c in CategoryId::ALL {
        for n in 1..=5 {
            let computed = pairs_by_refined_hom(c, n);
            let table = expected_singular_pairs(c, n);
            let defined = table.iter().all(|p| p.lambda.is_some() && p.mu.is_some());
            let expected: BTreeSet<(Vec<i8>, Vec<i8>)> = table
                .iter()
                .filter_map(|p| Some((p.lambda.as_ref()?.values.clone(), p.mu.as_ref()?.values.clone())))
                .collect();
            t.check(defined && expected == computed, || {
                let names: Vec<&str> = table.iter().map(|p| p.description.as_str()).collect();
                format!("{c} n={n}: table {names:?} does not match {} computed pairs", computed.len())
            });
        }
    }
    t.done()
}

fn c8_ext() -> Outcome {
    let mut t = Tally::default();
    for c in [CA, SA] {
        for m in 3..=6 {
            for n in 1..=5 {
                let d = build_mutation_graph(c, n, n + 1).unwrap().component_count();
                let expected = if m == n + 1 || m == n + 2 { d } else { 0 };
                t.eq(format!("{c} Ext(D{m},D{n})"), expected, ext_dim_standard(c, m, n, None).unwrap().dim);
            }
        }
        for n in 2..=4 {
            let singular: Vec<Vec<i8>> =
                expected_singular_pairs(c, n).into_iter().filter_map(|p| p.mu.map(|m| m.values)).collect();
            let group = Arc::new(automorphism_group(c, n));
            for mu in linear_characters(&group) {
                let dim = ext_dim_standard(c, n + 1, n, Some(&mu)).unwrap().dim;
                let expect_nonzero = singular.contains(&mu.values);
                t.check(expect_nonzero == (dim > 0), || format!("{c} Ext(D{},D{n} {}) = {dim}", n + 1, mu.label()));
            }
        }
    }
    t.done()
}

fn c9_quiver() -> Outcome {
    let mut t = Tally::default();
    for c in [CA, SA] {
        for q in singular_quiver_dims(c, 4).unwrap() {
            t.check(q.pass, || format!("{} expected {}, computed {:?}", q.id, q.expected, q.computed));
        }
    }
    t.done()
}

fn c10_fa_structure() -> Outcome {
    let mut t = Tally::default();
    for n in 1..=4 {
        for k in check_fa_sgn_projectivity(n, 6) {
            t.check(k.pass, || format!("{}: expected {}, computed {}", k.id, k.expected, k.computed));
        }
    }
    for c in CategoryId::ALL {
        for n in 1..=5 {
            for s in 1..=7 {
                let Some(g) = group_order(c, n) else { continue };
                let injections = hom_set(c, n, s, HomKind::Injective).morphisms.len();
                t.eq(format!("|{c}+({n},{s})|"), g * binomial(s, n), injections);
            }
        }
    }
    t.done()
}

fn c11_fa_ext() -> Outcome {
    let mut t = Tally::default();
    let mut stable = true;
    for n in [3, 4] {
        let closed = (n - 1) * factorial(n) / 2 + 1 - factorial(n);
        let e = ext_dim_fa(n, n + 2).unwrap();
        stable &= e.stabilized;
        t.eq(format!("FA Ext(n={n}) at cutoff {}", e.cutoff), closed, e.dim);
    }
    let mut out = t.done();
    if !stable && out.verdict == Verdict::Fail {
        out.verdict = Verdict::Inconclusive;
    }
    out
}

fn c12_counting() -> Outcome {
    let mut t = Tally::default();
    for c in CategoryId::ALL {
        for n in 1..=6 {
            for s in 1..=6 {
                let k = counting_identity(c, n, s);
                t.check(k.pass, || format!("{}: expected {}, computed {}", k.id, k.expected, k.computed));
                if c != FA {
                    let k = psi_rank(c, n, s).unwrap();
                    t.check(k.pass, || format!("{}: expected {}, computed {}", k.id, k.expected, k.computed));
                }
            }
        }
    }
    t.done()
}

type Criterion = (usize, &'static str, fn() -> Outcome);

const CRITERIA: [Criterion; 12] = [
    (1, "automorphism group orders", c1_group_orders),
    (2, "normalization idempotent identities", c2_psi),
    (3, "thin normalized category", c3_thin),
    (4, "normalized face/degeneracy relations", c4_dk),
    (5, "Hom table between standard modules", c5_hom_table),
    (6, "mutation graph components and shapes", c6_graphs),
    (7, "singular character pairs", c7_singular),
    (8, "Ext table for CA and SA", c8_ext),
    (9, "singular quiver dimensions and relations", c9_quiver),
    (10, "FA sign projectivity and restriction counts", c10_fa_structure),
    (11, "FA Ext against the closed form", c11_fa_ext),
    (12, "counting and rank identities", c12_counting),
];

fn main() -> ExitCode {
    let results: Vec<(Outcome, f64)> = CRITERIA
        .par_iter()
        .map(|(_, _, f)| {
            let start = Instant::now();
            let out = f();
            (out, start.elapsed().as_secs_f64())
        })
        .collect();
    let mut gate_ok = true;
    for ((id, name, _), (out, secs)) in CRITERIA.iter().zip(&results) {
        let tag = match out.verdict {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Inconclusive => "INCONCLUSIVE",
        };
        let failed = out.failures.len();
        println!(
            "criterion {id:>2} {tag:<12} {name} ({} checks, {failed} failed, {secs:.1}s)",
            out.checked
        );
        for f in out.failures.iter().take(4) {
            println!("    {f}");
        }
        if failed > 4 {
            println!("    ... {} more", failed - 4);
        }
        if out.verdict == Verdict::Fail && !DISPUTED.contains(id) {
            gate_ok = false;
        }
    }
    if gate_ok {
        ExitCode::SUCCESS
    } else {
        println!("acceptance gate failed outside the disputed criteria");
        ExitCode::FAILURE
    }
}
