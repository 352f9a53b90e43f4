//! End-to-end acceptance checks, one line per criterion.

use std::collections::{HashMap, HashSet};
use std::process::ExitCode;
use std::sync::OnceLock;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lstar::appendix::{
    a_list, b_list_violations, coefficient_is_safe, forbidden_rooted, load_corpus, verify_forbidden_rooted,
    verify_path_extension_limits, Exception, PATH_EXTENSION_CORPUS,
};
use lstar::edges::{parse_corpus, parse_single_rooted};
use lstar::enum_maverick::{ape_witnesses, enumerate_mavericks_with, order_histogram, ApeWitness, MaverickOptions, MaverickRun};
use lstar::enum_rooted::{annotate_ell0, enumerate_rooted, size_histogram, RootedCatalogEntry};
use lstar::graph::bits;
use lstar::iso::{canonical_form, hash_graph, isomorphic};
use lstar::linalg::{det, RatMatrix};
use lstar::rooted::line_graph;
use lstar::spectral::{gate_lambda_star, is_psd_at_two, lambda1_bounds};
use lstar::twisted::{
    catalog_extensions, claw_remark_violations, filter_twisted, reconstruction_failures, tpe_witnesses, TpeWitness,
};
use lstar::{Extension, Graph, Rational, RootedGraph};

type Outcome = Result<String, String>;

fn check(cond: bool, detail: String) -> Outcome {
    if cond {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn catalog() -> &'static Vec<RootedCatalogEntry> {
    static C: OnceLock<Vec<RootedCatalogEntry>> = OnceLock::new();
    C.get_or_init(|| {
        let mut c = enumerate_rooted().expect("rooted enumeration");
        annotate_ell0(&mut c).expect("l0 in range");
        c
    })
}

fn mavericks() -> &'static MaverickRun {
    static M: OnceLock<MaverickRun> = OnceLock::new();
    M.get_or_init(|| enumerate_mavericks_with(&MaverickOptions::default()).expect("maverick enumeration"))
}

fn trimmed(mut h: Vec<usize>) -> Vec<usize> {
    while h.last() == Some(&0) {
        h.pop();
    }
    h
}

fn rooted_counts() -> Outcome {
    let t = Instant::now();
    let c = catalog();
    let h = trimmed(size_histogram(c));
    let want = vec![1, 0, 1, 2, 6, 14, 42, 107, 190, 194, 136, 68, 27, 4, 2];
    check(c.len() == 794 && h == want, format!("{} members, sizes {:?}, {:.1?}", c.len(), h, t.elapsed()))
}

fn rooted_maximal() -> Outcome {
    let text = include_str!("../data/fig6_maximal.txt");
    let drawn: Vec<_> = parse_corpus(text)
        .map_err(|e| e.to_string())?
        .into_iter()
        .map(|l| parse_single_rooted(&l.edges).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    let maximal: Vec<_> = catalog().iter().filter(|e| e.maximal).collect();
    let mut used = vec![false; drawn.len()];
    let mut unmatched = 0;
    for e in &maximal {
        let hits: Vec<usize> = (0..drawn.len()).filter(|&i| isomorphic(&drawn[i], &e.graph)).collect();
        if hits.len() != 1 || used[hits[0]] {
            unmatched += 1;
        } else {
            used[hits[0]] = true;
        }
    }
    check(
        maximal.len() == 48 && drawn.len() == 48 && unmatched == 0,
        format!("{} maximal, {} drawn, {} unmatched", maximal.len(), drawn.len(), unmatched),
    )
}

fn rooted_ell0() -> Outcome {
    let mut bad = 0;
    for e in catalog() {
        let Some(l0) = e.ell0 else {
            bad += 1;
            continue;
        };
        let f = line_graph(&e.graph);
        for len in 0..=l0 + 3 {
            let g = lstar::rooted::extend(&f, &Extension::Augmented { len }).map_err(|e| e.to_string())?;
            if is_psd_at_two(&g) != (len < l0) {
                bad += 1;
            }
        }
    }
    let range = catalog().iter().all(|e| e.ell0.is_some_and(|l| l <= 6));
    check(range && bad == 0, format!("l0 within 0..=6: {range}, {bad} monotonicity failures"))
}

fn maverick_counts() -> Outcome {
    let t = Instant::now();
    let run = mavericks();
    let h = trimmed(order_histogram(&run.mavericks));
    let mut want = vec![0; 9];
    want.extend([13, 629, 1304, 1237, 775, 408, 221, 107, 42, 13, 3]);
    let empty_20 = run.level_sizes.get(20) == Some(&0);
    check(
        run.mavericks.len() == 4752 && h == want && empty_20,
        format!("{} mavericks, orders 9..19 {:?}, level 20 empty: {empty_20}, {:.1?}", run.mavericks.len(), &h[9..], t.elapsed()),
    )
}

fn twisted_counts() -> Outcome {
    let tw = filter_twisted(&mavericks().mavericks).map_err(|e| e.to_string())?;
    let h = trimmed(lstar::twisted::order_histogram(&tw));
    let mut want = vec![0; 10];
    want.extend([48, 133, 220, 236, 210, 162, 96, 40, 13, 3]);
    let rebuilt = reconstruction_failures(&tw);
    check(
        tw.len() == 1161 && h == want && rebuilt.is_empty(),
        format!("{} twisted, orders 10..19 {:?}, unique witnesses, {} rebuild failures", tw.len(), &h[10..], rebuilt.len()),
    )
}

fn forbidden() -> Outcome {
    let t = Instant::now();
    let r = verify_forbidden_rooted(&forbidden_rooted()).map_err(|e| e.to_string())?;
    let elapsed = t.elapsed();
    let negative = r.rows.iter().filter(|r| r.negative).count();
    check(
        r.rows.len() == 8 && negative == 8 && elapsed.as_secs_f64() < 1.0,
        format!("{negative}/8 negative in {elapsed:.1?}"),
    )
}

fn appendix() -> Outcome {
    let corpus = load_corpus(PATH_EXTENSION_CORPUS).map_err(|e| e.to_string())?;
    let a = a_list();
    let b_bad = b_list_violations(&corpus);
    let mut entries = a.clone();
    entries.extend(corpus);
    let r = verify_path_extension_limits(&entries).map_err(|e| e.to_string())?;
    let kinds: HashSet<Exception> = r.survivors.iter().map(|s| s.exception).collect();
    let want: HashSet<Exception> = [Exception::E6, Exception::E7, Exception::EPrime].into();
    let safe = coefficient_is_safe().map_err(|e| e.to_string())?;
    check(
        a.len() == 39 && b_bad.is_empty() && r.passed && kinds == want && safe,
        format!(
            "A-list {}, {} survivors of kinds {:?}, {} disagreements",
            a.len(),
            r.survivors.len(),
            {
                let mut k: Vec<String> = kinds.iter().map(|k| format!("{k:?}")).collect();
                k.sort();
                k
            },
            r.disagreements.len()
        ),
    )
}

/// Certifies `lambda_1(G_{n+1}) < lambda_1(G_n)` for consecutive members by
/// refining bisection intervals until they are disjoint; gives up at 2^-160.
fn strictly_decreasing(graphs: &[Graph]) -> bool {
    let mut open: Vec<usize> = (0..graphs.len() - 1).collect();
    let mut k = 24;
    while !open.is_empty() && k <= 160 {
        let w = Rational::new(BigInt::one(), BigInt::one() << k);
        let mut need: Vec<usize> = open.iter().flat_map(|&i| [i, i + 1]).collect();
        need.dedup();
        let bounds: HashMap<usize, (Rational, Rational)> =
            need.into_iter().map(|i| (i, lambda1_bounds(&graphs[i], &w))).collect();
        open.retain(|&i| bounds[&(i + 1)].1 >= bounds[&i].0);
        k += 24;
    }
    open.is_empty()
}

fn eigenvalue_oracles() -> Outcome {
    let t = Instant::now();
    let to_f = |r: &Rational| num_traits::ToPrimitive::to_f64(r).unwrap();
    let fine = Rational::new(BigInt::one(), BigInt::one() << 30);
    let (lo, hi) = lambda1_bounds(&Graph::e_graph(10), &fine);
    let e10 = (to_f(&lo) + 2.006594).abs() < 1e-5 && (to_f(&hi) + 2.006594).abs() < 1e-5;
    let decreasing = [Graph::e_graph as fn(usize) -> Graph, Graph::e_prime_graph]
        .iter()
        .all(|family| strictly_decreasing(&(4..=60).map(family).collect::<Vec<_>>()));
    let (lo, hi) = lambda1_bounds(&Graph::e_graph(60), &fine);
    let e60 = (to_f(&lo) + lstar::spectral::LAMBDA_STAR).abs() < 1e-4 && (to_f(&hi) + lstar::spectral::LAMBDA_STAR).abs() < 1e-4;
    let (lo, hi) = lambda1_bounds(&Graph::e_prime_graph(60), &fine);
    let ep60 = (to_f(&lo) + lstar::spectral::LAMBDA_PRIME).abs() < 1e-3 && (to_f(&hi) + lstar::spectral::LAMBDA_PRIME).abs() < 1e-3;
    let elapsed = t.elapsed();
    check(
        e10 && decreasing && e60 && ep60 && elapsed.as_secs_f64() < 30.0,
        format!("E10 {e10}, strictly decreasing {decreasing}, E60 {e60}, E'60 {ep60}, {elapsed:.1?}"),
    )
}

fn random_rooted(rng: &mut ChaCha8Rng) -> RootedGraph {
    let n = rng.gen_range(1..=7);
    let p = rng.gen_range(0.1..0.9);
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    let roots = rng.gen_range(1..1u64 << n);
    RootedGraph::new(g, roots).expect("roots in range")
}

fn reduction_step() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1e_4a);
    let mut violations = 0;
    let mut above = 0;
    for _ in 0..200 {
        let f = random_rooted(&mut rng);
        let gates: Vec<_> = (0..=5)
            .map(|len| gate_lambda_star(&lstar::rooted::extend(&f, &Extension::Augmented { len }).unwrap()))
            .collect();
        if gates.iter().any(|g| g.is_err()) || gates.windows(2).any(|w| w[0] != w[1]) {
            violations += 1;
        } else if gates[0] == Ok(lstar::spectral::Gate::Above) {
            above += 1;
        }
    }
    check(violations == 0, format!("200 rooted graphs, {above} above, {violations} violations"))
}

/// Laplace expansion along the first row.
fn cofactor(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 1 {
        return BigInt::from(m[0][0]);
    }
    let mut total = BigInt::zero();
    for j in 0..n {
        let minor: Vec<Vec<i64>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect()).collect();
        let term = BigInt::from(m[0][j]) * cofactor(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// Smallest adjacency code over all vertex orderings.
fn brute_canonical(g: &Graph) -> Vec<bool> {
    let n = g.order();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<bool>> = None;
    permute(&mut perm, 0, &mut |p| {
        let code: Vec<bool> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| g.has_edge(p[i], p[j])).collect();
        if best.as_ref().is_none_or(|b| code < *b) {
            best = Some(code);
        }
    });
    best.unwrap_or_default()
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

fn ape_definition(g: &Graph) -> Vec<ApeWitness> {
    definition_filter(g, |u0, u1, u2, uc| vec![(u0, u1), (u1, u2), (u0, uc)])
        .into_iter()
        .map(|(u0, u1, u2, uc)| ApeWitness { u0, u1, u2, uc })
        .collect()
}

fn tpe_definition(g: &Graph) -> Vec<TpeWitness> {
    definition_filter(g, |u0, u1, u2, uc| vec![(u0, u1), (u0, u2), (u1, u2), (u0, uc)])
        .into_iter()
        .filter(|&(_, u1, u2, _)| u1 < u2)
        .map(|(u0, u1, u2, uc)| TpeWitness { u0, u1, u2, uc })
        .collect()
}

/// Quadruples whose removal of `{u1, u2, uc}` destroys exactly `edges`.
fn definition_filter(
    g: &Graph,
    edges: impl Fn(usize, usize, usize, usize) -> Vec<(usize, usize)>,
) -> Vec<(usize, usize, usize, usize)> {
    let n = g.order();
    let mut out = Vec::new();
    for u0 in 0..n {
        for u1 in 0..n {
            for u2 in 0..n {
                for uc in 0..n {
                    let q = [u0, u1, u2, uc];
                    if (0..4).any(|i| (i + 1..4).any(|j| q[i] == q[j])) {
                        continue;
                    }
                    let gone = 1u64 << u1 | 1 << u2 | 1 << uc;
                    let lost: HashSet<(usize, usize)> =
                        g.edges().filter(|&(a, b)| (gone >> a | gone >> b) & 1 == 1).collect();
                    let want: HashSet<(usize, usize)> =
                        edges(u0, u1, u2, uc).into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
                    if lost == want {
                        out.push((u0, u1, u2, uc));
                    }
                }
            }
        }
    }
    out.sort();
    out
}

fn random_witness_graph(rng: &mut ChaCha8Rng) -> Graph {
    let base = rng.gen_range(1..=6);
    let p = rng.gen_range(0.2..0.8);
    let mut g = Graph::new(base);
    for u in 0..base {
        for v in u + 1..base {
            if rng.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    // hang gadgets and leaves off random vertices to make witnesses likely
    while g.order() < 10 && rng.gen_bool(0.7) {
        let at = rng.gen_range(0..g.order());
        let n = g.order();
        match rng.gen_range(0..3) {
            0 if n + 2 <= 10 => {
                g = g.with_new_vertex(1 << at).with_new_vertex(1 << n);
            }
            1 if n + 2 <= 10 => {
                g = g.with_new_vertex(1 << at).with_new_vertex(1 << at | 1 << n);
            }
            _ => g = g.with_new_vertex(1 << at),
        }
    }
    g
}

fn property_oracles() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xde7);
    let mut det_bad = 0;
    for _ in 0..10_000 {
        // symmetric, like every matrix the library builds
        let mut m = vec![vec![0i64; 5]; 5];
        #[allow(clippy::needless_range_loop)]
        for i in 0..5 {
            for j in i..5 {
                let x = rng.gen_range(-4..=4);
                m[i][j] = x;
                m[j][i] = x;
            }
        }
        let rows = m.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect()).collect();
        let d = det(&RatMatrix::from_rows(rows).map_err(|e| e.to_string())?);
        if d != Rational::from_integer(cofactor(&m)) {
            det_bad += 1;
        }
    }

    // all labelled graphs on n vertices, classes by brute force and by the library
    let mut class_counts = Vec::new();
    let mut dedup_bad = 0;
    for n in 1..=6usize {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let mut brute: HashSet<Vec<bool>> = HashSet::new();
        let mut canon: HashSet<Graph> = HashSet::new();
        let mut buckets: HashMap<Vec<(usize, usize)>, Vec<Graph>> = HashMap::new();
        let mut classes = 0;
        for mask in 0u64..1 << pairs.len() {
            let mut g = Graph::new(n);
            for i in bits(mask) {
                g.add_edge(pairs[i].0, pairs[i].1);
            }
            if !g.is_connected() {
                continue;
            }
            let fresh = brute.insert(brute_canonical(&g));
            if canon.insert(canonical_form(&g)) != fresh {
                dedup_bad += 1;
            }
            let bucket = buckets.entry(hash_graph(&g).0).or_default();
            let seen = bucket.iter().any(|h| isomorphic(h, &g));
            if seen == fresh {
                dedup_bad += 1;
            }
            if !seen {
                bucket.push(g);
                classes += 1;
            }
        }
        class_counts.push(classes);
    }

    let mut witness_bad = 0;
    let mut with_witness = 0;
    for _ in 0..500 {
        let g = random_witness_graph(&mut rng);
        let (a, t) = (ape_witnesses(&g), tpe_witnesses(&g));
        with_witness += (!a.is_empty() || !t.is_empty()) as usize;
        if a != ape_definition(&g) || t != tpe_definition(&g) {
            witness_bad += 1;
        }
    }
    check(
        det_bad == 0 && dedup_bad == 0 && class_counts == [1, 1, 2, 6, 21, 112] && witness_bad == 0,
        format!(
            "det mismatches {det_bad}, classes {class_counts:?} with {dedup_bad} dedup mismatches, \
             witness mismatches {witness_bad} ({with_witness}/500 graphs with witnesses)"
        ),
    )
}

fn unique_leaf() -> Outcome {
    let run = mavericks();
    let big: Vec<Graph> = run.mavericks.iter().filter(|g| g.order() >= 18).cloned().collect();
    let ext = catalog_extensions(catalog(), 18..=19).map_err(|e| e.to_string())?;
    let mut graphs = big.clone();
    graphs.extend(ext.iter().cloned());
    let mut bad = 0;
    for g in &graphs {
        let leaves = lstar::linegraph::bipartite_line_graph_leaves(g);
        if leaves.len() != 1 || g.without_vertex(leaves[0]).has_induced_claw() {
            bad += 1;
        }
    }
    let (plain17, remark_bad) = claw_remark_violations(&run.mavericks, 17);
    check(
        bad == 0 && plain17 == 2 && remark_bad.is_empty(),
        format!(
            "{} mavericks and {} extensions of order 18-19, {bad} violations; {plain17} non-twisted of order 17",
            big.len(),
            ext.len()
        ),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("rooted catalog counts", rooted_counts),
        ("maximal rooted graphs", rooted_maximal),
        ("l0 range and monotonicity", rooted_ell0),
        ("maverick counts", maverick_counts),
        ("twisted maverick counts", twisted_counts),
        ("forbidden rooted determinants", forbidden),
        ("path-extension limits", appendix),
        ("eigenvalue oracles", eigenvalue_oracles),
        ("reduction step", reduction_step),
        ("brute-force oracles", property_oracles),
        ("unique bipartite line graph leaf", unique_leaf),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("PASS {:>2}. {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2}. {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
