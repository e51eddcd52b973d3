//! Exact `P_DP(G, m)` by exhausting full covers in spanning-tree gauge.
//!
//! Any full cover can be relabelled fibre by fibre until the matchings on
//! a fixed spanning tree are identities, so only the co-tree permutations
//! vary: `(m!)^{β}` assignments for cyclomatic number `β`. Conjugating
//! every fibre by one common permutation keeps the tree identities and
//! conjugates each co-tree permutation, so the first co-tree edge only
//! needs one representative per conjugacy class. Partial matchings never
//! lower the count and are skipped.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use super::count::Plan;
use super::perm::{self, Permutation};
use super::{CoverError, GaugeAssignment, Matching, MAX_FOLD};
use crate::exec::Exec;
use crate::graph::{Edge, Graph};
use crate::poly::chromatic_polynomial;

pub const DEFAULT_BUDGET: u128 = 2_000_000_000;
pub const DEFAULT_MAX_WITNESSES: usize = 1024;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Refuse searches whose estimated work exceeds this many steps.
    pub budget: u128,
    pub exec: Exec,
    pub reduce_conjugation: bool,
    /// Minimizers beyond this many are counted but not materialized.
    pub max_witnesses: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: DEFAULT_BUDGET,
            exec: Exec::default(),
            reduce_conjugation: true,
            max_witnesses: DEFAULT_MAX_WITNESSES,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DpResult {
    pub m: usize,
    pub value: BigUint,
    /// `P(G, m)`, the count for the identity cover.
    pub chromatic: BigUint,
    pub assignments: u128,
    /// How many examined assignments attain `value`.
    pub minimizers: u128,
    /// Minimizing assignments in enumeration order, at most
    /// `max_witnesses` of them.
    pub witnesses: Vec<GaugeAssignment>,
}

impl DpResult {
    pub fn equals_chromatic(&self) -> bool {
        self.value == self.chromatic
    }
}

pub fn dp_color_function(g: &Graph, m: usize, budget: u128) -> Result<DpResult, CoverError> {
    dp_color_function_with(
        g,
        m,
        &SearchOptions {
            budget,
            ..SearchOptions::default()
        },
    )
}

struct Space {
    tree: Vec<Edge>,
    cotree: Vec<(Edge, usize)>,
    first: Vec<Permutation>,
    all: Vec<Permutation>,
    radix: u128,
    total: u128,
}

impl Space {
    fn decode(&self, mut idx: u128) -> Vec<&Permutation> {
        let c = self.cotree.len();
        let mut out = vec![&self.all[0]; c];
        for j in (1..c).rev() {
            out[j] = &self.all[(idx % self.radix) as usize];
            idx /= self.radix;
        }
        if c > 0 {
            out[0] = &self.first[idx as usize];
        }
        out
    }

    fn assignment(&self, m: usize, idx: u128) -> GaugeAssignment {
        GaugeAssignment {
            m,
            tree: self.tree.clone(),
            cotree: self
                .cotree
                .iter()
                .zip(self.decode(idx))
                .map(|(&(e, _), p)| (e, p.clone()))
                .collect(),
        }
    }
}

struct Acc {
    cap: usize,
    best: Option<BigUint>,
    minimizers: u128,
    witnesses: Vec<u128>,
    scratch: Vec<Matching>,
}

impl Acc {
    fn offer(&mut self, value: BigUint, idx: u128) {
        match &self.best {
            Some(b) if value > *b => return,
            Some(b) if value == *b => {}
            _ => {
                self.best = Some(value);
                self.minimizers = 0;
                self.witnesses.clear();
            }
        }
        self.minimizers += 1;
        if self.witnesses.len() < self.cap {
            self.witnesses.push(idx);
        }
    }

    fn merge(mut self, other: Acc) -> Acc {
        match (&self.best, &other.best) {
            (_, None) => return self,
            (None, _) => return other,
            (Some(a), Some(b)) if b < a => return other,
            (Some(a), Some(b)) if a < b => return self,
            _ => {}
        }
        self.minimizers += other.minimizers;
        self.witnesses.extend(other.witnesses);
        self.witnesses.sort_unstable();
        self.witnesses.truncate(self.cap);
        self
    }
}

/// `P_DP(G, m)` for a connected graph, with the minimizing gauge
/// assignments. Witnesses are listed in enumeration order, so they do not
/// depend on the execution mode.
pub fn dp_color_function_with(g: &Graph, m: usize, opts: &SearchOptions) -> Result<DpResult, CoverError> {
    if m > MAX_FOLD {
        return Err(CoverError::BadFold(m));
    }
    if !g.is_connected() {
        return Err(CoverError::Disconnected);
    }
    let chromatic = chromatic_polynomial(g)
        .eval_i64(m as i64)
        .to_biguint()
        .unwrap_or_default();
    let tree = g.bfs_spanning_forest();
    if m == 0 || tree.len() == g.m() {
        let witness = GaugeAssignment {
            m,
            tree,
            cotree: Vec::new(),
        };
        return Ok(DpResult {
            m,
            value: chromatic.clone(),
            chromatic,
            assignments: 1,
            minimizers: 1,
            witnesses: vec![witness],
        });
    }
    let cotree: Vec<(Edge, usize)> = g
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| tree.binary_search(e).is_err())
        .map(|(k, e)| (*e, k))
        .collect();
    let c = cotree.len() as u32;
    let radix = (1..=m as u128).try_fold(1u128, |a, b| a.checked_mul(b));
    let first_len = if opts.reduce_conjugation {
        partition_count(m)
    } else {
        radix.unwrap_or(u128::MAX)
    };
    let total = radix
        .and_then(|r| r.checked_pow(c - 1))
        .and_then(|t| t.checked_mul(first_len));
    let per_step = chromatic.clone().max(BigUint::from(g.n() * m));
    let required = total.map(|t| BigUint::from(t) * &per_step);
    let (Some(total), Some(radix)) = (total, radix) else {
        return Err(refusal(u128::MAX, opts.budget, chromatic));
    };
    match required.as_ref().and_then(ToPrimitive::to_u128) {
        Some(r) if r <= opts.budget => {}
        r => return Err(refusal(r.unwrap_or(u128::MAX), opts.budget, chromatic)),
    }

    let all = perm::all_permutations(m);
    let first = if opts.reduce_conjugation {
        perm::conjugacy_representatives(m)
    } else {
        all.clone()
    };
    let space = Space {
        tree,
        cotree,
        first,
        all,
        radix,
        total,
    };
    let plan = Plan::new(g);
    let base = vec![Matching::identity(m); g.m()];
    let acc = opts.exec.fold_range(
        space.total as u64,
        || Acc {
            cap: opts.max_witnesses,
            best: None,
            minimizers: 0,
            witnesses: Vec::new(),
            scratch: base.clone(),
        },
        |mut acc, idx| {
            let idx = idx as u128;
            for (&(_, k), p) in space.cotree.iter().zip(space.decode(idx)) {
                acc.scratch[k] = Matching::from_permutation(p);
            }
            let value = plan.count(m, &acc.scratch);
            acc.offer(value, idx);
            acc
        },
        Acc::merge,
    );
    Ok(DpResult {
        m,
        value: acc.best.unwrap_or_default(),
        chromatic,
        assignments: space.total,
        minimizers: acc.minimizers,
        witnesses: acc.witnesses.iter().map(|&i| space.assignment(m, i)).collect(),
    })
}

fn refusal(required: u128, budget: u128, upper_bound: BigUint) -> CoverError {
    CoverError::BudgetExceeded {
        required,
        budget,
        upper_bound,
    }
}

fn partition_count(m: usize) -> u128 {
    // p(k) by the standard coin-change recurrence
    let mut p = vec![0u128; m + 1];
    p[0] = 1;
    for part in 1..=m {
        for k in part..=m {
            p[k] += p[k - part];
        }
    }
    p[m]
}

/// `P_DP` of a possibly disconnected graph: the product over components.
pub fn dp_color_function_product(g: &Graph, m: usize, opts: &SearchOptions) -> Result<BigUint, CoverError> {
    let mut out = BigUint::from(1u32);
    for comp in g.components() {
        let (h, _) = g.induced_subgraph(&comp);
        let r = dp_color_function_with(&h, m, opts)?;
        if r.value.is_zero() {
            return Ok(r.value);
        }
        out *= r.value;
    }
    Ok(out)
}

/// The least `m` with `P_DP(G, m) > 0`, maximized over components.
pub fn dp_chromatic_number(g: &Graph, opts: &SearchOptions) -> Result<usize, CoverError> {
    let mut chi = 0;
    for comp in g.components() {
        let (h, _) = g.induced_subgraph(&comp);
        let mut m = chi.max(1);
        while dp_color_function_with(&h, m, opts)?.value.is_zero() {
            m += 1;
        }
        chi = chi.max(m);
    }
    Ok(chi)
}
