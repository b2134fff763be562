//! Counting and constructing universal cycles for k-permutations.
//!
//! Universal cycles for `P(n,k)` are in bijection with Eulerian tours of the
//! transition digraph, where a tour is a cyclic arc sequence (two tours that
//! differ only by where they start are the same tour). Three independent
//! routes produce the count:
//!
//! * closed forms for `k <= 3`,
//! * the BEST theorem, `tours = cof(L) * prod_v (d+(v) - 1)!`, with the
//!   Laplacian cofactor computed by exact elimination,
//! * exhaustive backtracking over trails that begin with the arc labelled by
//!   the lexicographically smallest k-permutation `1 2 .. k`.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use num_bigint::{BigInt, BigUint};
use num_traits::{pow, One};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::digraph::TransitionDigraph;
use crate::error::{Error, Result};
use crate::exactmat::{to_count, BigCount, ExactMatrix};
use crate::perm::{count_k_permutations, Alphabet, CyclicSequence};

/// Default cap on the number of digraph vertices for the determinant route.
pub const DEFAULT_MAX_VERTICES: u64 = 5000;

/// Limits for the brute-force search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TourBudget {
    /// Largest digraph (in arcs) the search will attempt.
    pub max_arcs: usize,
    /// The search aborts once it has found more tours than this.
    pub max_count: u64,
}

impl TourBudget {
    pub fn new(max_arcs: usize, max_count: u64) -> Result<Self> {
        if max_arcs == 0 || max_count == 0 {
            return Err(Error::Parameter(
                "tour budget limits must be positive".into(),
            ));
        }
        Ok(TourBudget {
            max_arcs,
            max_count,
        })
    }
}

impl Default for TourBudget {
    fn default() -> Self {
        TourBudget {
            max_arcs: 40,
            max_count: 100_000_000,
        }
    }
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// Closed-form number of universal cycles for `k` in `{1, 2, 3}`:
///
/// * `k = 1`: `(n-1)!`
/// * `k = 2`: `n^(n-2) * ((n-2)!)^n`
/// * `k = 3`: `(n-3)^((n-1)(n-2)/2) * (n-2)^(n-1) * (n-1)^((n-1)(n-2)/2 - 2)
///   * n^(n-2) * ((n-3)!)^(n(n-1))`
pub fn count_closed_form(n: usize, k: usize) -> Result<BigCount> {
    let min_n = match k {
        1 => 2,
        2 => 3,
        3 => 4,
        _ => return Err(Error::NoClosedForm { k }),
    };
    if n < min_n {
        return Err(Error::Parameter(format!(
            "closed form for k = {k} needs n >= {min_n}, got n = {n}"
        )));
    }
    let nb = n as u64;
    let ipow = |base: u64, e: usize| pow(BigUint::from(base), e);
    let count = match k {
        1 => factorial(nb - 1),
        2 => ipow(nb, n - 2) * pow(factorial(nb - 2), n),
        _ => {
            let half = (n - 1) * (n - 2) / 2;
            ipow(nb - 3, half)
                * ipow(nb - 2, n - 1)
                * ipow(nb - 1, half - 2)
                * ipow(nb, n - 2)
                * pow(factorial(nb - 3), n * (n - 1))
        }
    };
    Ok(BigCount(count))
}

/// Determinant of `l` with row and column `i` deleted.
pub fn laplacian_cofactor(l: &ExactMatrix, i: usize) -> Result<BigInt> {
    l.minor(i, i).determinant()
}

/// Every diagonal cofactor of the Laplacian, computed in parallel.
pub fn all_laplacian_cofactors(d: &TransitionDigraph) -> Result<Vec<BigInt>> {
    let l = d.laplacian_matrix();
    (0..d.vertex_count())
        .into_par_iter()
        .map(|i| laplacian_cofactor(&l, i))
        .collect()
}

/// Number of Eulerian tours of `d` by the BEST theorem.
pub fn eulerian_tour_count(d: &TransitionDigraph) -> Result<BigCount> {
    let cof = laplacian_cofactor(&d.laplacian_matrix(), 0)?;
    let cof = to_count(&cof).expect("Laplacian cofactors count arborescences");
    let degree_term = (0..d.vertex_count())
        .map(|v| factorial(d.out_arcs(v).len() as u64 - 1))
        .fold(BigUint::one(), |acc, f| acc * f);
    Ok(BigCount(cof * degree_term))
}

pub fn count_matrix_tree(n: usize, k: usize) -> Result<BigCount> {
    count_matrix_tree_with_limit(n, k, DEFAULT_MAX_VERTICES)
}

pub fn count_matrix_tree_with_limit(n: usize, k: usize, max_vertices: u64) -> Result<BigCount> {
    if k == 1 {
        return Err(Error::Parameter(
            "k = 1 has no transition digraph; use the closed form (n-1)!".into(),
        ));
    }
    if k >= 2 && k < n {
        let vertices = count_k_permutations(n, k - 1).unwrap_or(u64::MAX);
        if vertices > max_vertices {
            return Err(Error::TooLarge {
                vertices,
                limit: max_vertices,
            });
        }
    }
    eulerian_tour_count(&TransitionDigraph::build(n, k)?)
}

fn check_params(n: usize, k: usize) -> Result<()> {
    Alphabet::new(n)?;
    if k == 0 || k >= n {
        return Err(Error::Parameter(format!(
            "need 1 <= k < n, got n = {n}, k = {k}"
        )));
    }
    Ok(())
}

fn over_arcs(arcs: usize, budget: &TourBudget) -> Error {
    Error::BudgetExceeded {
        reason: format!(
            "{arcs} arcs exceeds the brute-force limit of {}",
            budget.max_arcs
        ),
        lower_bound: BigUint::default(),
    }
}

fn over_count(found: u64, budget: &TourBudget) -> Error {
    Error::BudgetExceeded {
        reason: format!("more than {} tours", budget.max_count),
        lower_bound: BigUint::from(found),
    }
}

/// Shared tour tally for the parallel search. Workers flush local counts in
/// batches and stop once the total passes the budget.
struct Tally {
    found: AtomicU64,
    abort: AtomicBool,
    max_count: u64,
}

const FLUSH_EVERY: u64 = 1024;

impl Tally {
    fn flush(&self, local: &mut u64) {
        let total = self.found.fetch_add(*local, Ordering::Relaxed) + *local;
        *local = 0;
        if total > self.max_count {
            self.abort.store(true, Ordering::Relaxed);
        }
    }

    fn aborted(&self) -> bool {
        self.abort.load(Ordering::Relaxed)
    }
}

struct TrailCounter<'a> {
    d: &'a TransitionDigraph,
    used: Vec<bool>,
    local: u64,
    tally: &'a Tally,
}

impl TrailCounter<'_> {
    fn extend(&mut self, v: usize, remaining: usize) {
        if remaining == 0 {
            self.local += 1;
            if self.local >= FLUSH_EVERY {
                self.tally.flush(&mut self.local);
            }
            return;
        }
        if self.tally.aborted() {
            return;
        }
        for a in self.d.out_arcs(v) {
            if !self.used[a] {
                self.used[a] = true;
                self.extend(self.d.arc(a).head, remaining - 1);
                self.used[a] = false;
            }
        }
    }
}

/// Exact number of universal cycles by exhaustive search.
///
/// The search is split across the arcs that can follow the fixed start arc;
/// subtree counts are summed, so the total equals the sequential count.
pub fn count_bruteforce(n: usize, k: usize, budget: &TourBudget) -> Result<BigCount> {
    check_params(n, k)?;
    if k == 1 {
        if n > budget.max_arcs {
            return Err(over_arcs(n, budget));
        }
        let mut found = 0u64;
        let mut result = Ok(());
        enumerate_cyclic_orders(n, |_| {
            found += 1;
            if found > budget.max_count {
                result = Err(over_count(found, budget));
                return false;
            }
            true
        });
        result?;
        return Ok(BigCount::from(found));
    }

    let d = TransitionDigraph::build(n, k)?;
    if d.arc_count() > budget.max_arcs {
        return Err(over_arcs(d.arc_count(), budget));
    }
    let tally = Tally {
        found: AtomicU64::new(0),
        abort: AtomicBool::new(false),
        max_count: budget.max_count,
    };
    let start = 0;
    let second = d.arc(start).head;
    let remaining = d.arc_count() - 2;
    d.out_arcs(second)
        .into_par_iter()
        .filter(|&a| a != start)
        .for_each(|a| {
            let mut used = vec![false; d.arc_count()];
            used[start] = true;
            used[a] = true;
            let mut search = TrailCounter {
                d: &d,
                used,
                local: 0,
                tally: &tally,
            };
            search.extend(d.arc(a).head, remaining);
            tally.flush(&mut search.local);
        });
    let found = tally.found.load(Ordering::Relaxed);
    if found > budget.max_count {
        return Err(over_count(found, budget));
    }
    Ok(BigCount::from(found))
}

/// Calls `emit` with `1` followed by each permutation of `2..=n`, in
/// lexicographic order, until it returns `false`.
fn enumerate_cyclic_orders(n: usize, mut emit: impl FnMut(&[u32]) -> bool) {
    let mut seq: Vec<u32> = (1..=n as u32).collect();
    loop {
        if !emit(&seq) {
            return;
        }
        // next permutation of seq[1..]
        let tail = &mut seq[1..];
        let Some(i) = (1..tail.len()).rev().find(|&i| tail[i - 1] < tail[i]) else {
            return;
        };
        let j = (i..tail.len())
            .rev()
            .find(|&j| tail[j] > tail[i - 1])
            .unwrap();
        tail.swap(i - 1, j);
        tail[i..].reverse();
    }
}

struct TrailEnumerator<'a, F> {
    d: &'a TransitionDigraph,
    used: Vec<bool>,
    path: Vec<usize>,
    emitted: u64,
    max_count: u64,
    exceeded: bool,
    emit: F,
}

impl<F: FnMut(CyclicSequence)> TrailEnumerator<'_, F> {
    fn extend(&mut self, v: usize) {
        if self.exceeded {
            return;
        }
        if self.path.len() == self.d.arc_count() {
            if self.emitted == self.max_count {
                self.exceeded = true;
                return;
            }
            self.emitted += 1;
            let cycle = self.sequence();
            (self.emit)(cycle);
            return;
        }
        for a in self.d.out_arcs(v) {
            if !self.used[a] {
                self.used[a] = true;
                self.path.push(a);
                self.extend(self.d.arc(a).head);
                self.path.pop();
                self.used[a] = false;
            }
        }
    }

    /// Symbols of the current tour, rotated so the first arc's label sits
    /// at the front.
    fn sequence(&self) -> CyclicSequence {
        tour_to_sequence(self.d, &self.path)
    }
}

/// The universal cycle spelled by a closed tour: each arc contributes its
/// appended symbol, rotated so the sequence opens with the label of the
/// tour's first arc.
fn tour_to_sequence(d: &TransitionDigraph, tour: &[usize]) -> CyclicSequence {
    let len = tour.len();
    let shift = d.k() - 1;
    let mut symbols = vec![0; len];
    for (j, &a) in tour.iter().enumerate() {
        symbols[(j + shift) % len] = d.arc(a).symbol;
    }
    CyclicSequence::new(symbols)
}

/// Emits every universal cycle exactly once, each in canonical (least)
/// rotation, in lexicographic order. Returns the number emitted.
///
/// Every k-permutation occurs once, so the least rotation is the one opening
/// with `1 2 .. k`; tours are therefore grown from that arc, trying
/// continuations in increasing symbol order, which yields lexicographic
/// order directly. If more than `budget.max_count` cycles exist, the first
/// `max_count` are emitted and then a budget error is returned.
pub fn enumerate_all(
    n: usize,
    k: usize,
    budget: &TourBudget,
    mut emit: impl FnMut(CyclicSequence),
) -> Result<u64> {
    check_params(n, k)?;
    if k == 1 {
        if n > budget.max_arcs {
            return Err(over_arcs(n, budget));
        }
        let mut emitted = 0u64;
        let mut exceeded = false;
        enumerate_cyclic_orders(n, |s| {
            if emitted == budget.max_count {
                exceeded = true;
                return false;
            }
            emitted += 1;
            emit(CyclicSequence::new(s.to_vec()));
            true
        });
        if exceeded {
            return Err(over_count(emitted + 1, budget));
        }
        return Ok(emitted);
    }

    let d = TransitionDigraph::build(n, k)?;
    if d.arc_count() > budget.max_arcs {
        return Err(over_arcs(d.arc_count(), budget));
    }
    let mut search = TrailEnumerator {
        d: &d,
        used: vec![false; d.arc_count()],
        path: Vec::with_capacity(d.arc_count()),
        emitted: 0,
        max_count: budget.max_count,
        exceeded: false,
        emit: &mut emit,
    };
    search.used[0] = true;
    search.path.push(0);
    search.extend(d.arc(0).head);
    if search.exceeded {
        return Err(over_count(search.emitted + 1, budget));
    }
    Ok(search.emitted)
}

/// Collects [`enumerate_all`] into a vector.
pub fn enumerate_all_vec(n: usize, k: usize, budget: &TourBudget) -> Result<Vec<CyclicSequence>> {
    let mut out = Vec::new();
    enumerate_all(n, k, budget, |c| out.push(c))?;
    Ok(out)
}

/// A universal cycle built with Hierholzer's algorithm.
///
/// With `seed = None` arcs are tried in label order; a seed shuffles each
/// vertex's arc order reproducibly. For `k >= 2` the cycle opens with
/// `1 2 .. k-1`. For `k = 1` the result is `1 2 .. n` regardless of seed.
pub fn generate_cycle(n: usize, k: usize, seed: Option<u64>) -> Result<CyclicSequence> {
    check_params(n, k)?;
    if k == 1 {
        return Ok(CyclicSequence::new((1..=n as u32).collect()));
    }
    let d = TransitionDigraph::build(n, k)?;
    let mut order: Vec<Vec<usize>> = (0..d.vertex_count())
        .map(|v| d.out_arcs(v).collect())
        .collect();
    if let Some(seed) = seed {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for arcs in &mut order {
            arcs.shuffle(&mut rng);
        }
    }
    let tour = hierholzer(&d, &order, 0);
    let cycle = tour_to_sequence(&d, &tour);
    debug_assert!(crate::perm::is_universal_cycle(&cycle, n, k).is_valid());
    Ok(cycle)
}

/// Closed tour through every arc, starting and ending at `start`. `order[v]`
/// lists the arcs leaving `v` in the order they should be tried.
fn hierholzer(d: &TransitionDigraph, order: &[Vec<usize>], start: usize) -> Vec<usize> {
    let mut next = vec![0usize; d.vertex_count()];
    let mut vertex_stack = vec![start];
    let mut arc_stack: Vec<usize> = Vec::new();
    let mut tour = Vec::with_capacity(d.arc_count());
    while let Some(&v) = vertex_stack.last() {
        if let Some(&a) = order[v].get(next[v]) {
            next[v] += 1;
            vertex_stack.push(d.arc(a).head);
            arc_stack.push(a);
        } else {
            vertex_stack.pop();
            if let Some(a) = arc_stack.pop() {
                tour.push(a);
            }
        }
    }
    tour.reverse();
    tour
}

/// Which counting routes to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Closed,
    MatrixTree,
    /// Closed form and determinant when applicable, plus brute force when it
    /// fits the budget.
    All,
}

/// Pairwise agreement between the counts that were produced. A pair is
/// `None` when either side is missing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Agreement {
    pub all: bool,
    pub closed_form_matrix_tree: Option<bool>,
    pub closed_form_brute_force: Option<bool>,
    pub matrix_tree_brute_force: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReport {
    pub n: usize,
    pub k: usize,
    pub closed_form: Option<BigCount>,
    pub matrix_tree: Option<BigCount>,
    pub brute_force: Option<BigCount>,
    pub agree: Agreement,
}

impl CountReport {
    pub fn new(
        n: usize,
        k: usize,
        closed_form: Option<BigCount>,
        matrix_tree: Option<BigCount>,
        brute_force: Option<BigCount>,
    ) -> Self {
        let pair = |a: &Option<BigCount>, b: &Option<BigCount>| match (a, b) {
            (Some(a), Some(b)) => Some(a == b),
            _ => None,
        };
        let closed_form_matrix_tree = pair(&closed_form, &matrix_tree);
        let closed_form_brute_force = pair(&closed_form, &brute_force);
        let matrix_tree_brute_force = pair(&matrix_tree, &brute_force);
        let all = [
            closed_form_matrix_tree,
            closed_form_brute_force,
            matrix_tree_brute_force,
        ]
        .iter()
        .all(|p| p.unwrap_or(true));
        CountReport {
            n,
            k,
            closed_form,
            matrix_tree,
            brute_force,
            agree: Agreement {
                all,
                closed_form_matrix_tree,
                closed_form_brute_force,
                matrix_tree_brute_force,
            },
        }
    }

    /// Runs the requested routes. Under [`Method::All`], routes that do not
    /// apply (no closed form, `k = 1`, over budget) are left empty.
    pub fn compute(
        n: usize,
        k: usize,
        method: Method,
        budget: &TourBudget,
        max_vertices: u64,
    ) -> Result<Self> {
        check_params(n, k)?;
        let report = match method {
            Method::Closed => Self::new(n, k, Some(count_closed_form(n, k)?), None, None),
            Method::MatrixTree => Self::new(
                n,
                k,
                None,
                Some(count_matrix_tree_with_limit(n, k, max_vertices)?),
                None,
            ),
            Method::All => {
                let closed = match count_closed_form(n, k) {
                    Ok(c) => Some(c),
                    Err(Error::NoClosedForm { .. }) => None,
                    Err(e) => return Err(e),
                };
                let tree = if k == 1 {
                    None
                } else {
                    match count_matrix_tree_with_limit(n, k, max_vertices) {
                        Ok(c) => Some(c),
                        Err(Error::TooLarge { .. }) => None,
                        Err(e) => return Err(e),
                    }
                };
                let brute = match count_bruteforce(n, k, budget) {
                    Ok(c) => Some(c),
                    Err(Error::BudgetExceeded { .. }) => None,
                    Err(e) => return Err(e),
                };
                if closed.is_none() && tree.is_none() && brute.is_none() {
                    return Err(Error::TooLarge {
                        vertices: count_k_permutations(n, k - 1).unwrap_or(u64::MAX),
                        limit: max_vertices,
                    });
                }
                Self::new(n, k, closed, tree, brute)
            }
        };
        Ok(report)
    }
}
