//! Property sweeps behind the acceptance suite and `rankwl verify`.
//!
//! Each suite checks one group of facts against the brute-force oracles and
//! reports, per property, how many instances were checked and which failed.
//! Random instances draw from `generate::stream_rng(seed, i)`, so a suite's
//! result depends only on its seed.

use std::fmt;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::Rng;

use crate::canon::{canonical_string, canonise, iso_test, orbit_partition};
use crate::decomposition::{evaluate_expression, expression_fixtures, rank_width_exact};
use crate::generate::{
    all_graphs, all_trees, complete, cycle, path, random_graph, random_graph_with_edges,
    random_permutation, random_subset, star, stream_rng,
};
use crate::graph::{apply_permutation, automorphism_orbits, brute_force_isomorphic, connected_components, Graph, VertexSet};
use crate::pebble::verify_theorem_wl_game;
use crate::split::{
    components_flip, find_flip_extension, find_flip_function, find_split_pair, flip_extension_graph,
    is_nice, nice_split_pairs, respects_cut,
};
use crate::wl::{wl_distinguishes, wl_stable_k};
use crate::Error;

/// How many failing instances a report keeps verbatim.
const KEPT_FAILURES: usize = 10;

/// Dimension passed to canonisation and orbit checks (it runs one higher).
pub const DEFAULT_DIMENSION: usize = 2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyReport {
    pub name: String,
    pub checked: usize,
    pub failed: usize,
    /// The first few failing instances.
    pub examples: Vec<String>,
}

impl PropertyReport {
    fn new(name: impl Into<String>) -> Self {
        PropertyReport {
            name: name.into(),
            checked: 0,
            failed: 0,
            examples: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.examples.len() < KEPT_FAILURES {
                self.examples.push(describe());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub id: usize,
    pub name: &'static str,
    pub properties: Vec<PropertyReport>,
    pub elapsed: Duration,
    pub limit: Option<Duration>,
}

impl SuiteReport {
    pub fn failures(&self) -> usize {
        self.properties.iter().map(|p| p.failed).sum()
    }

    pub fn checks(&self) -> usize {
        self.properties.iter().map(|p| p.checked).sum()
    }

    pub fn within_limit(&self) -> bool {
        self.limit.is_none_or(|l| self.elapsed <= l)
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0 && self.within_limit()
    }

    /// One line: verdict, suite, counts and timing.
    pub fn summary(&self) -> String {
        let limit = match self.limit {
            Some(l) => format!(" (limit {}s)", l.as_secs()),
            None => String::new(),
        };
        format!(
            "{} criterion {} [{}]: {} checks, {} failures, {:.1}s{}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.checks(),
            self.failures(),
            self.elapsed.as_secs_f64(),
            limit
        )
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.properties {
            writeln!(
                f,
                "  {} {}: {} checked, {} failed",
                if p.passed() { "pass" } else { "FAIL" },
                p.name,
                p.checked,
                p.failed
            )?;
            for e in &p.examples {
                writeln!(f, "    {e}")?;
            }
        }
        write!(f, "{}", self.summary())
    }
}

type SuiteFn = fn(u64) -> Result<Vec<PropertyReport>, Error>;

/// `(id, name, time limit in seconds, body)` for every suite.
pub const SUITES: [(usize, &str, Option<u64>, SuiteFn); 9] = [
    (1, "oracle-iso", Some(60), oracle_iso),
    (2, "identification", Some(600), identification),
    (3, "wl-game", Some(600), wl_game),
    (4, "canonisation", Some(300), canonisation),
    (5, "monotonicity", None, monotonicity),
    (6, "flips", Some(120), flips),
    (7, "nice-pairs", None, nice_pairs),
    (8, "widths", Some(120), widths),
    (9, "orbits", None, orbits),
];

/// Names accepted by `run_suite`, in order.
pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|s| s.1).collect()
}

/// Runs the suite with this name or number. `None` for an unknown name.
pub fn run_suite(name: &str, seed: u64) -> Option<Result<SuiteReport, Error>> {
    let &(id, sname, limit, body) = SUITES
        .iter()
        .find(|s| s.1 == name || s.0.to_string() == name)?;
    let start = Instant::now();
    Some(body(seed).map(|properties| SuiteReport {
        id,
        name: sname,
        properties,
        elapsed: start.elapsed(),
        limit: limit.map(Duration::from_secs),
    }))
}

fn rank_width(g: &Graph) -> Result<usize, Error> {
    Ok(rank_width_exact(g)?.0)
}

/// Class representatives on exactly `n` vertices with rank width at most 1.
fn low_width_classes(n: usize) -> Result<Vec<Graph>, Error> {
    let mut out = Vec::new();
    for g in all_graphs(n) {
        if rank_width(&g)? <= 1 {
            out.push(g);
        }
    }
    Ok(out)
}

fn show(g: &Graph) -> String {
    let edges: Vec<String> = g.edges().map(|(u, v)| format!("{u}-{v}")).collect();
    format!("n={} [{}]", g.n(), edges.join(" "))
}

/// Every pair from the pool of 5-vertex classes of rank width at most 1,
/// each with five relabellings: canonisation-based isomorphism must match
/// the brute-force answer.
fn oracle_iso(seed: u64) -> Result<Vec<PropertyReport>, Error> {
    let mut pool: Vec<Graph> = Vec::new();
    let mut stream = 0;
    for g in low_width_classes(5)? {
        for _ in 0..5 {
            let mut rng = stream_rng(seed, stream);
            stream += 1;
            let perm = random_permutation(&mut rng, g.n());
            pool.push(apply_permutation(&g, &perm)?);
        }
        pool.push(g);
    }
    let mut agree = PropertyReport::new("iso_test(dim 2) agrees with brute force on 5-vertex pairs");
    for i in 0..pool.len() {
        for j in i..pool.len() {
            let (g, h) = (&pool[i], &pool[j]);
            let expected = brute_force_isomorphic(g, h).is_some();
            let got = iso_test(g, h, DEFAULT_DIMENSION)?;
            agree.record(got == expected, || format!("{} vs {}: got {got}", show(g), show(h)));
        }
    }
    Ok(vec![agree])
}

/// 2-WL separates each low-width graph on up to six vertices from every
/// other class of its order; a few pairs are also run at dimension 7.
fn identification(_seed: u64) -> Result<Vec<PropertyReport>, Error> {
    let mut sweep = PropertyReport::new("2-WL separates rank width <= 1 graphs from all other classes, n <= 6");
    for n in 1..=6 {
        let classes = all_graphs(n);
        for (i, g) in classes.iter().enumerate() {
            if rank_width(g)? > 1 {
                continue;
            }
            for (j, h) in classes.iter().enumerate() {
                if i != j {
                    let d = wl_distinguishes(g, h, 2)?;
                    sweep.record(d, || format!("{} vs {}", show(g), show(h)));
                }
            }
        }
    }
    let mut smoke = PropertyReport::new("7-WL separates selected pairs, n <= 5");
    let pairs = [
        (cycle(4), complete(2).disjoint_union(&complete(2))),
        (path(4), star(3)),
        (complete(3).disjoint_union(&complete(2)), cycle(5)),
    ];
    for (g, h) in &pairs {
        let d = wl_distinguishes(g, h, 7)?;
        smoke.record(d, || format!("{} vs {}", show(g), show(h)));
    }
    Ok(vec![sweep, smoke])
}

/// k-WL equivalence matches the (k+1)-pebble game, exhaustively on class
/// representatives up to five vertices and on sampled six-vertex pairs.
fn wl_game(seed: u64) -> Result<Vec<PropertyReport>, Error> {
    let mut exhaustive = PropertyReport::new("k-WL agrees with the (k+1)-pebble game, all pairs n <= 5, k in {1,2}");
    // pairs of different order are included; both sides must call them apart
    let classes: Vec<Graph> = (1..=5).flat_map(all_graphs).collect();
    for i in 0..classes.len() {
        for j in i..classes.len() {
            for k in 1..=2 {
                let ok = verify_theorem_wl_game(&classes[i], &classes[j], k)?;
                exhaustive.record(ok, || {
                    format!("k={k}: {} vs {}", show(&classes[i]), show(&classes[j]))
                });
            }
        }
    }
    let mut sampled = PropertyReport::new("k-WL agrees with the (k+1)-pebble game, 200 sampled pairs n = 6");
    let classes = all_graphs(6);
    for s in 0..200 {
        let mut rng = stream_rng(seed, s);
        let g = classes.choose(&mut rng).expect("classes exist");
        let h = classes.choose(&mut rng).expect("classes exist");
        let h = apply_permutation(h, &random_permutation(&mut rng, 6))?;
        for k in 1..=2 {
            let ok = verify_theorem_wl_game(g, &h, k)?;
            sampled.record(ok, || format!("k={k}: {} vs {}", show(g), show(&h)));
        }
    }
    Ok(vec![exhaustive, sampled])
}

/// The 300-graph corpus: low-width classes up to six vertices, topped up
/// with random graphs on up to seven.
fn canonisation_corpus(seed: u64) -> Result<Vec<Graph>, Error> {
    let mut corpus = Vec::new();
    for n in 1..=6 {
        corpus.extend(low_width_classes(n)?);
    }
    let mut s = 0;
    while corpus.len() < 300 {
        let mut rng = stream_rng(seed ^ 0x5eed, s);
        s += 1;
        let n = rng.gen_range(2..=7);
        let p = rng.gen_range(0.2..0.8);
        corpus.push(random_graph(&mut rng, n, p));
    }
    corpus.truncate(300);
    Ok(corpus)
}

/// The canonical form is isomorphic to its input and does not change under
/// relabelling.
fn canonisation(seed: u64) -> Result<Vec<PropertyReport>, Error> {
    let corpus = canonisation_corpus(seed)?;
    let mut faithful = PropertyReport::new("canonical form is isomorphic to the input");
    let mut invariant = PropertyReport::new("canonical string is unchanged by 30 random relabellings");
    for (gi, g) in corpus.iter().enumerate() {
        let form = canonise(g, DEFAULT_DIMENSION)?;
        let iso = brute_force_isomorphic(&form.to_graph(), g).is_some();
        faithful.record(iso, || show(g));
        let reference = canonical_string(&form);
        for r in 0..30 {
            let mut rng = stream_rng(seed, (gi * 30 + r) as u64);
            let perm = random_permutation(&mut rng, g.n());
            let relabelled = apply_permutation(g, &perm)?;
            let s = canonical_string(&canonise(&relabelled, DEFAULT_DIMENSION)?);
            invariant.record(s == reference, || format!("{} under {perm:?}", show(g)));
        }
    }
    Ok(vec![faithful, invariant])
}

/// Higher dimensions never lose distinctions, and colour ids are
/// relabelling-invariant.
fn monotonicity(seed: u64) -> Result<Vec<PropertyReport>, Error> {
    let mut mono = PropertyReport::new("distinguished at k implies distinguished at k+1, k in {1,2}, 500 pairs n <= 6");
    for s in 0..500 {
        let mut rng = stream_rng(seed, s);
        let n = rng.gen_range(1..=6);
        let max_m = n * (n - 1) / 2;
        let m = rng.gen_range(0..=max_m);
        // equal edge counts keep the pairs from being trivially apart
        let g = random_graph_with_edges(&mut rng, n, m);
        let h = random_graph_with_edges(&mut rng, n, m);
        for k in 1..=2 {
            let lower = wl_distinguishes(&g, &h, k)?;
            let upper = wl_distinguishes(&g, &h, k + 1)?;
            mono.record(!lower || upper, || format!("k={k}: {} vs {}", show(&g), show(&h)));
        }
    }
    let mut commute = PropertyReport::new("stable colour ids commute with relabelling, k <= 3, 200 samples");
    for s in 0..200 {
        let mut rng = stream_rng(seed ^ 0xc010, s);
        let n = rng.gen_range(1..=6);
        let g = random_graph(&mut rng, n, 0.5);
        let perm = random_permutation(&mut rng, n);
        let h = apply_permutation(&g, &perm)?;
        for k in 1..=3 {
            let (cg, ch) = (wl_stable_k(&g, k)?, wl_stable_k(&h, k)?);
            let total = n.pow(k as u32);
            let mut tuple = vec![0; k];
            let ok = (0..total).all(|idx| {
                let mut rest = idx;
                for slot in tuple.iter_mut().rev() {
                    *slot = rest % n;
                    rest /= n;
                }
                let image: Vec<usize> = tuple.iter().map(|&v| perm[v]).collect();
                cg.colour_of(&tuple) == ch.colour_of(&image)
            });
            commute.record(ok, || format!("k={k}: {} under {perm:?}", show(&g)));
        }
    }
    Ok(vec![mono, commute])
}

/// Flip functions and flip extensions built from a split pair leave no
/// component straddling the cut.
fn flips(seed: u64) -> Result<Vec<PropertyReport>, Error> {
    let mut flip = PropertyReport::new("flip-function components lie on one side, 200 instances n <= 9");
    let mut ext = PropertyReport::new("flip-extension components lie on one side, 200 instances n <= 9");
    for s in 0..200 {
        let mut rng = stream_rng(seed, s);
        let n = rng.gen_range(1..=9);
        let p = rng.gen_range(0.2..0.8);
        let g = random_graph(&mut rng, n, p);
        let x = random_subset(&mut rng, n);
        let sp = find_split_pair(&g, &x)?;
        let (f, chi) = find_flip_function(&g, &sp)?;
        let ok = respects_cut(&components_flip(&g, &chi, &f)?, &x);
        flip.record(ok, || format!("{} X={x}", show(&g)));
        let ok = match find_flip_extension(&g, &sp) {
            Ok(s) => respects_cut(&connected_components(&flip_extension_graph(&g, &s)?), &x),
            Err(_) => false,
        };
        ext.record(ok, || format!("{} X={x}", show(&g)));
    }
    Ok(vec![flip, ext])
}

/// Nice split pairs for random partitions `X = X1 ⊎ X2`.
fn nice_pairs(seed: u64) -> Result<Vec<PropertyReport>, Error> {
    let mut nice = PropertyReport::new("nice split pairs meet both containments and B_i ∩ X̄ ⊆ B, 50 instances");
    for s in 0..50 {
        let mut rng = stream_rng(seed, s);
        let n = rng.gen_range(2..=8);
        let p = rng.gen_range(0.2..0.8);
        let g = random_graph(&mut rng, n, p);
        let x = random_subset(&mut rng, n);
        let x1 = VertexSet::new(x.iter().filter(|_| rng.gen_bool(0.5)));
        let x2 = VertexSet::new(x.iter().filter(|&v| !x1.contains(v)));
        let sp = find_split_pair(&g, &x)?;
        let ok = match nice_split_pairs(&g, &x1, &x2, &sp) {
            Ok((p1, p2)) => p1.validate(&g).is_ok() && p2.validate(&g).is_ok() && is_nice(&g, &sp, &p1, &p2),
            Err(_) => false,
        };
        nice.record(ok, || format!("{} X1={x1} X2={x2}", show(&g)));
    }
    Ok(vec![nice])
}

/// Exact rank widths of complete graphs, trees and expression fixtures.
fn widths(_seed: u64) -> Result<Vec<PropertyReport>, Error> {
    let mut cliques = PropertyReport::new("rank width of K_n is 1, 2 <= n <= 8");
    for n in 2..=8 {
        let w = rank_width(&complete(n))?;
        cliques.record(w == 1, || format!("K_{n}: {w}"));
    }
    let mut trees = PropertyReport::new("rank width of every tree on <= 8 vertices is <= 2");
    for n in 1..=8 {
        for t in all_trees(n) {
            let w = rank_width(&t)?;
            trees.record(w <= 2, || format!("{}: {w}", show(&t)));
        }
    }
    let mut exprs = PropertyReport::new("rank width <= label count for expression fixtures");
    for (name, e) in expression_fixtures() {
        let (g, _) = evaluate_expression(&e);
        let w = rank_width(&g)?;
        exprs.record(w as u32 <= e.label_count(), || format!("{name}: width {w}, labels {}", e.label_count()));
    }
    Ok(vec![cliques, trees, exprs])
}

/// Diagonal 3-WL colours give the automorphism orbits of low-width graphs.
fn orbits(_seed: u64) -> Result<Vec<PropertyReport>, Error> {
    let mut report = PropertyReport::new("orbit_partition(G, 2) equals the automorphism orbits, rank width <= 1, n <= 6");
    for n in 1..=6 {
        for g in low_width_classes(n)? {
            let got = orbit_partition(&g, DEFAULT_DIMENSION)?;
            let expected = automorphism_orbits(&g);
            report.record(got == expected, || format!("{}: {got:?} vs {expected:?}", show(&g)));
        }
    }
    Ok(vec![report])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_are_addressable_by_name_and_number() {
        assert_eq!(suite_names().len(), 9);
        assert!(run_suite("no-such-suite", 0).is_none());
        let by_name = run_suite("nice-pairs", 0).unwrap().unwrap();
        let by_number = run_suite("7", 0).unwrap().unwrap();
        assert_eq!(by_name.properties, by_number.properties);
        assert!(by_name.passed(), "{by_name}");
    }

    #[test]
    fn reports_keep_a_few_failures() {
        let mut p = PropertyReport::new("demo");
        for i in 0..20 {
            p.record(i % 2 == 0, || format!("case {i}"));
        }
        assert_eq!((p.checked, p.failed, p.examples.len()), (20, 10, 10));
        assert!(!p.passed());
    }

    #[test]
    fn corpus_has_three_hundred_graphs() {
        let corpus = canonisation_corpus(0).unwrap();
        assert_eq!(corpus.len(), 300);
        assert!(corpus.iter().all(|g| g.n() <= 7));
    }
}
