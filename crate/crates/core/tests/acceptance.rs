//! End-to-end acceptance run: one PASS/FAIL line per criterion.
//! All comparisons are exact (mod-2 parities and structural equalities).

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;

use bilink::campaign::{run_campaign, CampaignConfig, CampaignMode, TrialReport};
use bilink::classify::{classify, classify_set, predict_after_crossing_change, LinkingPattern};
use bilink::diagram::{project_generic, CurveRef};
use bilink::extract::{edge_nlink, extract_nlink, ExtractOptions, Method};
use bilink::format::{emit_certificate, emit_embedding};
use bilink::graph::{alpha_opposite, PartitionedGraph, Square, SubgraphRef};
use bilink::geometry::random_embedding;
use common::{curve_edge_crossings, k33_scene, piercing_parity, planar_pair_scene, planar_square_scene};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn check_pattern(m: &SubgraphRef, p: &LinkingPattern) -> Result<(), String> {
    match p {
        LinkingPattern::Zero => Ok(()),
        LinkingPattern::Four { common_edge, squares } => {
            let star: BTreeSet<Square> = m.squares_containing_edge(*common_edge).unwrap().into_iter().collect();
            ensure(squares.iter().copied().collect::<BTreeSet<_>>() == star, || "FOUR squares are not the edge star".into())
        }
        LinkingPattern::Six { doubled, squares } => {
            for e in m.edges() {
                let k = squares.iter().filter(|s| s.contains_edge(e)).count();
                let want = if doubled.contains(&e) { 2 } else { 3 };
                ensure(k == want, || format!("edge ({},{}) appears {k} times, want {want}", e.x, e.y))?;
            }
            Ok(())
        }
    }
}

fn trichotomy() -> Outcome {
    let mut hist = [0usize; 3];
    for seed in 0..500 {
        let (e, c) = k33_scene(seed);
        let d = project_generic(&e, &[c], seed).map_err(|x| format!("seed {seed}: {x}"))?;
        let m = e.graph().whole();
        let p = classify(&d, &CurveRef::External(0), &m).map_err(|x| format!("seed {seed}: {x}"))?;
        check_pattern(&m, &p).map_err(|x| format!("seed {seed}: {x}"))?;
        hist[p.kind() as usize] += 1;
    }
    Ok(format!("500 scenes, ZERO/FOUR/SIX = {}/{}/{}, 0 violations", hist[0], hist[1], hist[2]))
}

fn crossing_changes() -> Outcome {
    let mut checked = 0;
    for seed in 0..100 {
        let (e, c) = k33_scene(seed);
        let d = project_generic(&e, &[c], seed).unwrap();
        let m = e.graph().whole();
        let gamma = CurveRef::External(0);
        let before = classify(&d, &gamma, &m).map_err(|x| x.to_string())?;
        for (x, f) in curve_edge_crossings(&d) {
            let after = classify(&d.crossing_change(&x).unwrap(), &gamma, &m).map_err(|x| x.to_string())?;
            let predicted = predict_after_crossing_change(&m, &before, f).map_err(|x| x.to_string())?;
            ensure(after == predicted, || format!("seed {seed}: prediction mismatch"))?;
            checked += 1;
        }
    }
    // the four transitions worked out by hand for K_{3,3} labeled 1,3,5 / 2,4,6
    let g = PartitionedGraph::complete(3, 3).unwrap();
    let m = g.whole();
    let sq = |names: &[&str]| -> BTreeSet<Square> {
        names
            .iter()
            .map(|n| {
                let c: Vec<String> = n.chars().map(String::from).collect();
                g.square([&c[0], &c[1], &c[2], &c[3]]).unwrap()
            })
            .collect()
    };
    let e = |a, b| g.edge(a, b).unwrap();
    let four12 = classify_set(&m, &sq(&["1234", "1236", "1254", "1256"])).unwrap();
    let six = classify_set(&m, &sq(&["1236", "1254", "1436", "3254", "1456", "3256"])).unwrap();
    let fixtures = [
        (&four12, e("2", "3"), sq(&["1254", "1256", "3254", "3256"])),
        (&four12, e("3", "4"), sq(&["1254", "1436", "1236", "3254", "1256", "3456"])),
        (&six, e("1", "4"), sq(&["1234", "1236", "3254", "3256"])),
        (&six, e("1", "2"), sq(&["1234", "1256", "1436", "3256", "1456", "3254"])),
    ];
    for (i, (p, f, want)) in fixtures.iter().enumerate() {
        let q = predict_after_crossing_change(&m, p, *f).unwrap();
        ensure(q.squares().into_iter().collect::<BTreeSet<_>>() == *want, || format!("fixture {i} differs"))?;
    }
    Ok(format!("{checked} curve/edge crossing changes on 100 scenes + 4 fixed transitions match"))
}

fn omega_well_defined() -> Outcome {
    let mut pairs = 0;
    for seed in 0..200 {
        let (e, c) = k33_scene(seed);
        let d1 = project_generic(&e, std::slice::from_ref(&c), seed).unwrap();
        let d2 = project_generic(&e, std::slice::from_ref(&c), seed + 1_000_003).unwrap();
        ensure(d1.direction() != d2.direction(), || format!("seed {seed}: directions coincide"))?;
        let gamma = CurveRef::External(0);
        for s in e.graph().squares() {
            let s = CurveRef::from(s);
            let w = d1.omega(&gamma, &s).unwrap();
            ensure(w == d2.omega(&gamma, &s).unwrap(), || format!("seed {seed}: directions disagree"))?;
            ensure(w == d1.omega(&s, &gamma).unwrap(), || format!("seed {seed}: not symmetric"))?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} curve/square pairs over 200 scenes agree across directions and are symmetric"))
}

fn campaign(shape: usize, n: usize, trials: usize, method: Method, mode: CampaignMode) -> Result<TrialReport, String> {
    let r = run_campaign(&CampaignConfig {
        shape: (shape, shape),
        n,
        trials,
        seed0: 0,
        bends: 1,
        method,
        allow_fallback: false,
        mode,
    })
    .map_err(|e| e.to_string())?;
    ensure(r.passed(), || format!("k{shape},{shape} {}: {:?}", method.as_str(), r.failures.first()))?;
    Ok(r)
}

fn theorem() -> Outcome {
    let mut parts = Vec::new();
    for (k, n, trials) in [(5, 2, 200), (7, 3, 50)] {
        let a = campaign(k, n, trials, Method::ProofGuided, CampaignMode::Extract)?;
        let b = campaign(k, n, trials, Method::Exhaustive, CampaignMode::Extract)?;
        ensure(a.certificates == trials && b.certificates == trials, || "missing certificates".into())?;
        let cases: Vec<String> = a.case_counts.iter().map(|(c, k)| format!("{c}:{k}")).collect();
        parts.push(format!("K{k},{k} n={n}: {trials}+{trials} verified ({})", cases.join(" ")));
    }
    Ok(parts.join("; "))
}

fn edge_links() -> Outcome {
    let a = campaign(5, 2, 4, Method::ProofGuided, CampaignMode::EdgeLink)?;
    let b = campaign(7, 3, 2, Method::ProofGuided, CampaignMode::EdgeLink)?;
    ensure(a.certificates == 100 && b.certificates == 98, || "missing certificates".into())?;
    Ok(format!("{} K5,5 and {} K7,7 edge certificates verified", a.certificates, b.certificates))
}

fn oracle() -> Outcome {
    for seed in 0..50 {
        let (e, curve, quad) = planar_square_scene(seed);
        let d = project_generic(&e, std::slice::from_ref(&curve), seed).unwrap();
        let w = d.omega(&Square::new(0, 1, 0, 1).unwrap().into(), &CurveRef::External(0)).unwrap();
        ensure(Some(w) == piercing_parity(&quad, &curve), || format!("flat square scene {seed}"))?;
        let (e, a, b, qa, _) = planar_pair_scene(seed);
        let d = project_generic(&e, &[], seed).unwrap();
        let cb = e.cycle_polyline(&b.cycle()).unwrap();
        ensure(Some(d.omega(&a.into(), &b.into()).unwrap()) == piercing_parity(&qa, &cb), || format!("flat pair scene {seed}"))?;
    }
    Ok("50 flat-square scenes and 50 flat-pair scenes match plane-piercing parity".into())
}

fn combinatorics() -> Outcome {
    let counts: Vec<usize> = [3, 4, 5].iter().map(|&k| SubgraphRef::prefix(k, k).squares().len()).collect();
    ensure(counts == [9, 36, 100], || format!("square counts {counts:?}"))?;
    let k33 = SubgraphRef::prefix(3, 3);
    for e in k33.edges() {
        ensure(k33.squares_containing_edge(e).unwrap().len() == 4, || "edge not in 4 squares".into())?;
    }
    let g0 = SubgraphRef::prefix(4, 4);
    let mut pairs = 0;
    for m in g0.subgraphs(3, 3) {
        for alpha in m.squares() {
            let n = alpha_opposite(&g0, &m, &alpha).unwrap();
            ensure(n != m && n.contains_square(&alpha), || "bad opposite".into())?;
            ensure(alpha_opposite(&g0, &n, &alpha).unwrap() == m, || "not an involution".into())?;
            pairs += 1;
        }
    }
    Ok(format!("counts 9/36/100, 4 squares per K3,3 edge, involution on {pairs} (M, alpha) pairs"))
}

fn determinism() -> Outcome {
    let g = PartitionedGraph::complete(7, 7).unwrap();
    let run = || {
        let e = random_embedding(&g, 42, 1).unwrap();
        let opts = ExtractOptions::default();
        let c = extract_nlink(&e, 3, &opts).unwrap();
        let edge = g.edges()[17];
        let ce = edge_nlink(&e, edge, 3, &opts).unwrap();
        (emit_embedding(&e), emit_certificate(&g, &c), emit_certificate(&g, &ce))
    };
    let (a, b) = (run(), run());
    ensure(a == b, || "outputs differ between runs".into())?;
    Ok(format!("embedding {} bytes, certificates {} + {} bytes, byte-identical", a.0.len(), a.1.len(), a.2.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("trichotomy", trichotomy),
        ("crossing-change transitions", crossing_changes),
        ("omega well-defined", omega_well_defined),
        ("n-link extraction", theorem),
        ("edge-through links", edge_links),
        ("plane-piercing oracle", oracle),
        ("subgraph combinatorics", combinatorics),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        let r = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match r {
            Ok(detail) => println!("PASS {} {name} [exact] {detail} ({secs:.1}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name} [exact] {detail} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
