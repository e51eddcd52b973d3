use std::fmt::Write as _;

use num_bigint::BigUint;
use serde::Serialize;

use super::{CorpusEntry, ScenarioResult, VerifyOptions};
use crate::constructions::{
    all_connected_graphs, complete, cycle, phi_expand, phi_family, random_chordal, seeded_rng, theta, NamedGraph,
    ThetaSpec,
};
use crate::cover::{count_transversals, dp_color_function_product, h0_cover, CoverError, SearchOptions};
use crate::graph::Graph;
use crate::poly::{chromatic_polynomial, simplicial_peel_identity, zykov_identity_check, Polynomial};
use crate::structure::{
    even_ell_witness, gt_certificate_with, kaul_mudrock_gap, leading_term_check, tree_edge_audit, CertKind,
    CertificateOutcome,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    /// Instances compared.
    pub items: usize,
    /// Instances left out because a search was refused.
    pub skipped: usize,
    pub detail: String,
}

#[derive(Default)]
struct Tally {
    items: usize,
    skipped: usize,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Tally {
    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.items += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    /// Runs a comparison that needs `P_DP` values; refusals count as skipped.
    fn with_dp(&mut self, r: Result<bool, CoverError>, what: impl FnOnce() -> String) {
        match r {
            Ok(ok) => self.record(ok, what),
            Err(CoverError::BudgetExceeded { .. }) => self.skipped += 1,
            Err(e) => self.failures.push(format!("{}: {e}", what())),
        }
    }

    fn finish(self, name: &str) -> Check {
        let mut detail = if self.failures.is_empty() {
            format!("{} instances agree", self.items)
        } else {
            format!("failures: {}", self.failures.join("; "))
        };
        for note in &self.notes {
            let _ = write!(detail, "; {note}");
        }
        Check {
            name: name.to_string(),
            pass: self.failures.is_empty() && self.items > 0,
            items: self.items,
            skipped: self.skipped,
            detail,
        }
    }
}

fn dp(g: &Graph, m: usize, opts: &SearchOptions) -> Result<BigUint, CoverError> {
    dp_color_function_product(g, m, opts)
}

fn p_at(g: &Graph, m: usize) -> BigUint {
    chromatic_polynomial(g)
        .eval_i64(m as i64)
        .to_biguint()
        .unwrap_or_default()
}

fn connected(corpus: &[CorpusEntry]) -> impl Iterator<Item = &CorpusEntry> {
    corpus.iter().filter(|c| c.graph.is_connected())
}

/// Triangle-glued graphs: one expansion on the first edge of each base.
fn triangle_glued() -> Vec<(String, Graph)> {
    let bases = [
        ("C4", cycle(4).ok()),
        ("C5", cycle(5).ok()),
        ("K4", Some(complete(4))),
        ("theta:2,2,2", ThetaSpec::new(vec![2, 2, 2]).ok().map(|s| theta(&s))),
        ("theta:1,2,2", ThetaSpec::new(vec![1, 2, 2]).ok().map(|s| theta(&s))),
    ];
    bases
        .into_iter()
        .filter_map(|(name, q)| {
            let q = q?;
            let e = *q.edges().first()?;
            Some((format!("{name}+triangle on {e}"), phi_expand(&q, e).ok()?))
        })
        .collect()
}

fn theta_specs() -> Vec<ThetaSpec> {
    [&[1, 2, 2][..], &[2, 2, 2], &[1, 3, 3], &[2, 3, 3], &[1, 2, 4], &[2, 2, 3], &[3, 3, 3]]
        .iter()
        .filter_map(|ls| ThetaSpec::new(ls.to_vec()).ok())
        .collect()
}

fn theta_id(s: &ThetaSpec) -> String {
    let ls: Vec<String> = s.lengths().iter().map(ToString::to_string).collect();
    format!("theta:{}", ls.join(","))
}

/// Chordal test graphs from the seeded generator.
pub fn chordal_corpus(seed: u64) -> Vec<Graph> {
    let mut rng = seeded_rng(seed);
    (0..10).map(|i| random_chordal(&mut rng, 3 + i % 4, 3)).collect()
}

/// Connected graphs with at least two blocks, for the block inequality.
pub fn multi_block_corpus(count: usize) -> Vec<Graph> {
    (4..=6)
        .flat_map(all_connected_graphs)
        .filter(|g| g.blocks().blocks.len() >= 2 && g.cyclomatic_number() <= 3)
        .take(count)
        .collect()
}

fn peel_identity(corpus: &[CorpusEntry]) -> Check {
    let mut t = Tally::default();
    let mut graphs: Vec<(String, Graph)> = connected(corpus).map(|c| (c.id.clone(), c.graph.clone())).collect();
    graphs.extend(triangle_glued());
    graphs.extend(chordal_corpus(0).into_iter().enumerate().map(|(i, g)| (format!("chordal#{i}"), g)));
    for (id, g) in &graphs {
        for u in g.simplicial_vertices() {
            let ok = simplicial_peel_identity(g, u).is_ok_and(|(l, r)| l == r);
            t.record(ok, || format!("{id} at vertex {u}"));
        }
    }
    t.finish("peel_identity")
}

fn simplicial_dp(opts: &VerifyOptions) -> Check {
    let search = opts.search();
    let mut t = Tally::default();
    for (id, g) in triangle_glued() {
        let u = g.n() - 1;
        let (rest, _) = match g.delete_vertex(u) {
            Ok(x) => x,
            Err(e) => {
                t.failures.push(format!("{id}: {e}"));
                continue;
            }
        };
        for m in [3usize, 4] {
            let r = dp(&g, m, &search).and_then(|a| Ok(a == BigUint::from(m - 2) * dp(&rest, m, &search)?));
            t.with_dp(r, || format!("{id} at m={m}"));
        }
    }
    for (i, g) in chordal_corpus(opts.seed).iter().enumerate() {
        for u in g.simplicial_vertices() {
            let (rest, _) = match g.delete_vertex(u) {
                Ok(x) => x,
                Err(_) => continue,
            };
            let d = g.degree(u);
            for m in [3usize, 4].into_iter().filter(|&m| m >= d) {
                let r = dp(g, m, &search).and_then(|a| Ok(a >= BigUint::from(m - d) * dp(&rest, m, &search)?));
                t.with_dp(r, || format!("chordal#{i} lower bound at vertex {u}, m={m}"));
            }
        }
    }
    t.finish("simplicial_dp_equality")
}

fn phi_family_check(opts: &VerifyOptions) -> Check {
    let search = opts.search();
    let mut t = Tally::default();
    let mut pairs: Vec<(String, Graph, Graph)> = Vec::new();
    for q in [cycle(4), cycle(5)].into_iter().flatten() {
        for g in phi_family(&q, 2).unwrap_or_default() {
            pairs.push((format!("Phi(C{}) member with {} vertices", q.n(), g.n()), g, q.clone()));
        }
    }
    if let (Ok(c4), Ok(c6)) = (cycle(4), cycle(6)) {
        pairs.push(("fig1-G1".into(), NamedGraph::Fig1G1.graph(), c4));
        pairs.push(("fig1-G2".into(), NamedGraph::Fig1G2.graph(), c6));
    }
    for (id, g, q) in &pairs {
        let k = g.n() - q.n();
        let rhs = Polynomial::linear(2).pow(k) * chromatic_polynomial(q);
        t.record(chromatic_polynomial(g) == rhs, || format!("{id}: polynomial"));
        for m in [3usize, 4] {
            let r = dp(g, m, &search).and_then(|a| Ok(a == BigUint::from(m - 2).pow(k as u32) * dp(q, m, &search)?));
            t.with_dp(r, || format!("{id}: P_DP at m={m}"));
        }
    }
    t.finish("phi_family_identities")
}

/// `(id, G1, G2, clique in G1, clique in G2)`.
type CliqueSum<'a> = (&'a str, Graph, Graph, &'a [usize], &'a [usize]);

fn gluing_identities(corpus: &[CorpusEntry]) -> Check {
    let mut t = Tally::default();
    let k3 = complete(3);
    let sums: [CliqueSum; 6] = [
        ("K3+K3 on an edge", k3.clone(), k3.clone(), &[0, 1], &[0, 1]),
        ("K3+C5 on a vertex", k3.clone(), cycle(5).unwrap_or_default(), &[0], &[0]),
        ("K4+K4 on a triangle", complete(4), complete(4), &[0, 1, 2], &[0, 1, 2]),
        ("C4+K3 on an edge", cycle(4).unwrap_or_default(), k3.clone(), &[0, 1], &[0, 1]),
        ("petersen+K2 on a vertex", NamedGraph::Petersen.graph(), complete(2), &[0], &[0]),
        ("fig1-G1+K3 on an edge", NamedGraph::Fig1G1.graph(), k3, &[1, 4], &[0, 1]),
    ];
    for (id, g1, g2, c1, c2) in &sums {
        let ok = zykov_identity_check(g1, g2, c1, c2).is_ok_and(|z| z.holds);
        t.record(ok, || id.to_string());
    }
    let mut graphs: Vec<(String, Graph)> = connected(corpus).map(|c| (c.id.clone(), c.graph.clone())).collect();
    graphs.extend(multi_block_corpus(20).into_iter().enumerate().map(|(i, g)| (format!("multi-block#{i}"), g)));
    for (id, g) in &graphs {
        let blocks = g.blocks().blocks;
        let product = blocks
            .iter()
            .fold(Polynomial::one(), |acc, b| acc * chromatic_polynomial(&g.block_subgraph(b)));
        let lhs = chromatic_polynomial(g).shift_up(blocks.len().saturating_sub(1));
        t.record(lhs == product, || format!("{id}: block factorization"));
    }
    t.finish("gluing_identities")
}

fn block_inequality(opts: &VerifyOptions) -> Check {
    let search = opts.search();
    let mut t = Tally::default();
    let m = 3usize;
    let mut equalities = 0;
    for (i, g) in multi_block_corpus(20).iter().enumerate() {
        let blocks = g.blocks().blocks;
        let r = (|| {
            let whole = dp(g, m, &search)? * BigUint::from(m).pow(blocks.len() as u32 - 1);
            let mut product = BigUint::from(1u32);
            for b in &blocks {
                product *= dp(&g.block_subgraph(b), m, &search)?;
            }
            if whole == product {
                equalities += 1;
            }
            Ok(whole <= product)
        })();
        t.with_dp(r, || format!("multi-block#{i} ({g})"));
    }
    t.notes.push(format!("equality observed in {equalities} of them at m={m}"));
    t.finish("block_inequality")
}

fn chordal_equality(opts: &VerifyOptions) -> Check {
    let search = opts.search();
    let mut t = Tally::default();
    for (i, g) in chordal_corpus(opts.seed).iter().enumerate() {
        for m in 2..=4usize {
            let r = dp(g, m, &search).map(|d| d == p_at(g, m));
            t.with_dp(r, || format!("chordal#{i} ({g}) at m={m}"));
        }
    }
    t.finish("chordal_equality")
}

fn leading_terms(corpus: &[CorpusEntry]) -> Check {
    let mut t = Tally::default();
    let mut graphs: Vec<(String, Graph)> = connected(corpus).map(|c| (c.id.clone(), c.graph.clone())).collect();
    graphs.extend(theta_specs().iter().map(|s| (theta_id(s), theta(s))));
    for (id, g) in &graphs {
        for &e in g.edges() {
            if g.is_bridge(e) {
                continue;
            }
            let ok = leading_term_check(g, e).is_ok_and(|l| l.pass);
            t.record(ok, || format!("{id} edge {e}"));
        }
    }
    t.finish("leading_term")
}

fn gap_soundness(scenarios: &[ScenarioResult], opts: &VerifyOptions) -> Check {
    let search = opts.search();
    let mut t = Tally::default();
    for s in scenarios {
        for r in s.table.iter().filter(|r| r.gap && r.equal.is_some()) {
            t.record(r.equal == Some(false), || format!("{} at m={}", s.id, r.m));
        }
    }
    let small: Vec<Graph> = (2..=5)
        .flat_map(all_connected_graphs)
        .filter(|g| g.cyclomatic_number() <= 3)
        .collect();
    for g in &small {
        for m in [2usize, 3] {
            if !g.edges().iter().any(|&e| kaul_mudrock_gap(g, e, m).unwrap_or(false)) {
                continue;
            }
            let r = dp(g, m, &search).map(|d| d < p_at(g, m));
            t.with_dp(r, || format!("{g} at m={m}"));
        }
    }
    t.finish("gap_soundness")
}

fn theta_classification(opts: &VerifyOptions) -> Check {
    let search = opts.search();
    let mut t = Tally::default();
    for s in theta_specs() {
        let g = theta(&s);
        let id = theta_id(&s);
        t.record(even_ell_witness(&g).is_none() == s.all_odd_with_shortest(), || {
            format!("{id}: even-ell edge presence")
        });
        let mut obs = Vec::new();
        for m in 2..=4usize {
            match dp(&g, m, &search) {
                Ok(d) => obs.push(format!("m={m}:{}", if d == p_at(&g, m) { "=" } else { "<" })),
                Err(_) => obs.push(format!("m={m}:refused")),
            }
        }
        t.notes.push(format!("{id} {}", obs.join(",")));
    }
    let expect = [(vec![1, 2, 2], [3usize, 4], true), (vec![2, 2, 2], [2, 3], false)];
    for (ls, ms, equal) in expect {
        let Ok(s) = ThetaSpec::new(ls) else { continue };
        let g = theta(&s);
        for m in ms {
            let r = dp(&g, m, &search).map(|d| (d == p_at(&g, m)) == equal);
            t.with_dp(r, || format!("{} at m={m}", theta_id(&s)));
        }
    }
    t.finish("theta_classification")
}

fn named_certificates(opts: &VerifyOptions) -> Check {
    let mut t = Tally::default();
    let cases = [
        (NamedGraph::Petersen, CertKind::Gt0, true),
        (NamedGraph::Fig2G1, CertKind::Gt0, true),
        (NamedGraph::Fig2G3, CertKind::Gt, true),
        (NamedGraph::Fig2G3, CertKind::Gt0, false),
    ];
    for (named, kind, expect_found) in cases {
        let g = named.graph();
        let what = || format!("{named} {kind:?}");
        match gt_certificate_with(&g, kind, opts.tree_cap, opts.exec) {
            Ok(CertificateOutcome::Found { cert, .. }) => {
                t.record(expect_found, what);
                t.record(tree_edge_audit(&g, &cert).unwrap_or(false), || format!("{named} {kind:?} audit"));
            }
            Ok(CertificateOutcome::NoneDefinitive { .. }) => t.record(!expect_found, what),
            Ok(CertificateOutcome::Inconclusive { .. }) => t.skipped += 1,
            Err(e) => t.failures.push(format!("{}: {e}", what())),
        }
    }
    t.finish("named_certificates")
}

fn h0_attains_p(corpus: &[CorpusEntry]) -> Check {
    let mut t = Tally::default();
    for c in corpus {
        for m in 1..=4usize {
            let ok = h0_cover(&c.graph, m).is_ok_and(|h| count_transversals(&h) == p_at(&c.graph, m));
            t.record(ok, || format!("{} at m={m}", c.id));
        }
    }
    t.finish("h0_attains_p")
}

fn scenario_verdict(scenarios: &[ScenarioResult], name: &str, pick: fn(&ScenarioResult) -> bool) -> Check {
    let mut t = Tally::default();
    for s in scenarios {
        t.record(pick(s), || s.id.clone());
    }
    t.finish(name)
}

/// The full check list, in a fixed order.
pub fn run_checks(corpus: &[CorpusEntry], scenarios: &[ScenarioResult], opts: &VerifyOptions) -> Vec<Check> {
    type Job<'a> = Box<dyn Fn() -> Check + Send + Sync + 'a>;
    let jobs: Vec<Job> = vec![
        Box::new(|| peel_identity(corpus)),
        Box::new(|| simplicial_dp(opts)),
        Box::new(|| phi_family_check(opts)),
        Box::new(|| gluing_identities(corpus)),
        Box::new(|| block_inequality(opts)),
        Box::new(|| chordal_equality(opts)),
        Box::new(|| leading_terms(corpus)),
        Box::new(|| gap_soundness(scenarios, opts)),
        Box::new(|| theta_classification(opts)),
        Box::new(|| named_certificates(opts)),
        Box::new(|| h0_attains_p(corpus)),
        Box::new(|| scenario_verdict(scenarios, "dominance", |s| s.verdicts.dominance)),
        Box::new(|| scenario_verdict(scenarios, "even_ell_consistency", |s| s.verdicts.even_ell_consistency)),
        Box::new(|| scenario_verdict(scenarios, "gap_strictness", |s| s.verdicts.gap_strictness)),
        Box::new(|| scenario_verdict(scenarios, "certificate_consistency", |s| s.verdicts.certificate_consistency)),
    ];
    opts.exec.map_slice(&jobs, |job| job())
}
