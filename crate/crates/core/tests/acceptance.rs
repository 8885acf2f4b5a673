//! Acceptance suite: one pass/fail line per criterion.
//!
//! Every criterion is evaluated at full strength. A criterion listed in
//! `KNOWN_RED` is still run and reported as FAIL; the test only asserts that
//! nothing outside that list fails and that the listed ones still do.

mod common;

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use qcode_core::ca_engine::{
    ca_add, canonical_wordtypes, derive_equation, equation_for, EquationSystem,
};
use qcode_core::design::{cell_count, cell_pattern};
use qcode_core::golden::{self, golden_examples, golden_matrices};
use qcode_core::jchar::{render_decimal, spectrum_bruteforce, summarize, AliasIndex};
use qcode_core::qc64::{
    self, analyze, evaluate, periodic_extend, search, system, AnalyzeOptions, Criterion, Method,
    SpectrumSource,
};
use qcode_core::{build_design, build_system, FrequencyVector, WordType, Z4};
use rand::Rng;

/// Criteria that cannot be met as stated, with the reason.
const KNOWN_RED: &[(u32, &str)] = &[(
    2,
    "reference K lists rows 112/132, 121/123, 211/213 exchanged relative to C·F with the reference C",
)];

struct Outcome {
    id: u32,
    title: &'static str,
    failures: Vec<String>,
    elapsed: Duration,
    limit: Duration,
}

impl Outcome {
    fn passed(&self) -> bool {
        self.failures.is_empty() && self.elapsed <= self.limit
    }
}

fn run(
    id: u32,
    title: &'static str,
    limit_secs: u64,
    body: impl FnOnce(&mut Vec<String>),
) -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    body(&mut failures);
    Outcome {
        id,
        title,
        failures,
        elapsed: start.elapsed(),
        limit: Duration::from_secs(limit_secs),
    }
}

fn expect<T: PartialEq + std::fmt::Debug>(f: &mut Vec<String>, what: &str, want: T, got: T) {
    if want != got {
        f.push(format!("{}: expected {:?}, got {:?}", what, want, got));
    }
}

fn labels(ws: &[WordType]) -> Vec<String> {
    ws.iter().map(WordType::label).collect()
}

fn criterion1(f: &mut Vec<String>) {
    for p in 1..=3 {
        let gm = golden_matrices(p).unwrap();
        let errs = golden::transcription_errors(&gm);
        expect(f, &format!("p={} transcription errors", p), 0, errs.len());
        let sys = build_system(p).unwrap();
        expect(
            f,
            &format!("p={} K order", p),
            gm.k_order.clone(),
            labels(&sys.k_order),
        );
        expect(
            f,
            &format!("p={} A order", p),
            gm.a_order.clone(),
            labels(&sys.a_order),
        );
        expect(f, &format!("p={} C", p), &gm.c, &sys.c);
        expect(f, &format!("p={} B", p), &gm.b, &sys.b);
        if let Some(c) = &gm.constants {
            expect(f, "p=3 constants", c, &sys.constants);
        }
        if let Some(d) = &gm.deltas {
            expect(f, "p=3 deltas", d, &sys.deltas);
        }
    }
    let sys = build_system(3).unwrap();
    expect(f, "C shape", (35, 64), (sys.c.len(), sys.c[0].len()));
    expect(f, "B shape", (7, 64), (sys.b.len(), sys.b[0].len()));
    expect(f, "deltas", vec![0, 0, 0, 1, 1, 1, 0], sys.deltas.clone());
}

fn criterion2(f: &mut Vec<String>) {
    let ex = golden_examples().unwrap().design256;
    let g = common::design256();
    let report = analyze(&g, Method::Theory, &AnalyzeOptions::default()).unwrap();
    expect(f, "K", Some(ex.k.clone()), report.k_values.clone());
    expect(
        f,
        "A",
        Some(vec![3, 3, 3, 2, 2, 2, 1]),
        report.a_values.clone(),
    );
    expect(f, "source", SpectrumSource::Theory, report.spectrum_source);
    let half = AliasIndex::from_exponent(1);
    let got: Vec<_> = report.spectrum.entries().collect();
    expect(
        f,
        "spectrum",
        vec![(6, half, 168), (8, AliasIndex::ONE, 7), (10, half, 56)],
        got,
    );
    let gwlp: Vec<BigRational> = [0, 0, 0, 0, 0, 42, 0, 7, 0, 14, 0, 0, 0, 0]
        .iter()
        .map(|&x| BigRational::from_integer(BigInt::from(x)))
        .collect();
    expect(f, "gwlp", &gwlp, &report.summary.gwlp);
    expect(
        f,
        "resolution",
        "13/2".to_string(),
        report.summary.resolution.to_string(),
    );

    let start = Instant::now();
    let d = build_design(&g).unwrap();
    expect(f, "design shape", (256, 14), (d.runs(), d.factors()));
    let oracle = spectrum_bruteforce(&d, 10, false).unwrap();
    expect(
        f,
        "oracle spectrum (<= 10 columns)",
        None,
        report.spectrum.truncated(10).first_difference(&oracle),
    );
    if start.elapsed() > Duration::from_secs(60) {
        f.push(format!(
            "brute-force confirmation took {:?}",
            start.elapsed()
        ));
    }
}

fn criterion3(f: &mut Vec<String>) {
    let mut rng = common::rng(3);
    for p in 1..=3usize {
        let mut theory = 0;
        for _ in 0..50 {
            let g = if p == 3 {
                common::random_p3_valid(&mut rng, &[2, 3, 4])
            } else {
                let n = rng.gen_range(2..=4);
                common::random_generator(&mut rng, n, p)
            };
            let th = analyze(&g, Method::Theory, &AnalyzeOptions::default()).unwrap();
            if th.spectrum_source == SpectrumSource::Theory {
                theory += 1;
            }
            let d = build_design(&g).unwrap();
            let oracle = spectrum_bruteforce(&d, d.factors(), false).unwrap();
            if let Some(diff) = th.spectrum.first_difference(&oracle) {
                f.push(format!("p={} V={:?}: {}", p, g.rows_as_ints(), diff));
            }
        }
        println!("    p={}: {}/50 spectra from the counting rule", p, theory);
    }
}

fn criterion4(f: &mut Vec<String>) {
    for p in 1..=5usize {
        let w = WordType::new(vec![Z4::ONE; p]);
        let k = derive_equation(&w).unwrap();
        let count = |c: u8| k.coeffs.iter().filter(|&&x| x == c).count();
        expect(f, &format!("p={} ones", p), 1 << (2 * p - 1), count(1));
        expect(f, &format!("p={} zeros", p), 1 << (2 * p - 2), count(0));
        expect(f, &format!("p={} twos", p), 1 << (2 * p - 2), count(2));
        let all_even = |i: usize| cell_pattern(i, p).iter().all(|x| !x.is_odd());
        let even_with = |c: u8| {
            (0..cell_count(p))
                .filter(|&i| k.coeffs[i] == c && all_even(i))
                .count()
        };
        expect(
            f,
            &format!("p={} even 2-cells", p),
            1 << (p - 1),
            even_with(2),
        );
        expect(
            f,
            &format!("p={} even 0-cells", p),
            1 << (p - 1),
            even_with(0),
        );
    }
}

fn criterion5(f: &mut Vec<String>) {
    let want = [2usize, 9, 35, 135];
    let reference = golden_examples().unwrap().type_counts;
    for p in 1..=4usize {
        let n = canonical_wordtypes(p).unwrap().len();
        expect(f, &format!("p={} count", p), want[p - 1], n);
        expect(
            f,
            &format!("p={} closed form", p),
            EquationSystem::expected_k_rows(p),
            n,
        );
        if let Some(t) = reference.iter().find(|t| t.p == p) {
            expect(f, &format!("p={} reference total", p), t.total, n);
        }
    }
    for p in 1..=3usize {
        for i in 0..cell_count(p) {
            let w = WordType::new(cell_pattern(i, p));
            if w.is_all_even() || w.is_canonical() {
                continue;
            }
            let k = equation_for(&w).unwrap();
            let rep = derive_equation(&w.canonical()).unwrap();
            if k.coeffs != rep.coeffs {
                f.push(format!("k_{} differs from k_{}", w, w.canonical()));
            }
        }
    }
}

fn criterion6(f: &mut Vec<String>) {
    let ex = golden_examples().unwrap();
    let f0 = ex.design256.frequency().unwrap();
    let fam = periodic_extend(&f0, 1).unwrap();
    expect(f, "Ft", ex.extension.frequency().unwrap(), fam.ft.clone());
    expect(f, "r", 70, fam.predicted_r);
    expect(f, "rho", AliasIndex::from_exponent(17), fam.predicted_rho);
    expect(
        f,
        "rendering",
        "70.9999924".to_string(),
        render_decimal(&fam.predicted_resolution, 7),
    );

    let sys = system(3).unwrap();
    let mut rng = common::rng(6);
    let mut done = 0;
    while done < 100 {
        let n = rng.gen_range(3..=12);
        let f0 = common::random_nonzero_rows(&mut rng, n, 3);
        if !qc64::preconditions_met(&f0) {
            continue;
        }
        done += 1;
        for t in 1..=3u64 {
            let fam = periodic_extend(&f0, t).unwrap();
            let (k0, a0) = evaluate(&f0, sys).unwrap();
            let counts: Vec<u64> = f0
                .counts()
                .iter()
                .enumerate()
                .map(|(i, &c)| if i == 0 { c } else { c + t })
                .collect();
            let (kt, at) = evaluate(&FrequencyVector::new(3, counts).unwrap(), sys).unwrap();
            if kt.iter().zip(&k0).any(|(x, y)| x - y != 64 * t)
                || at.iter().zip(&a0).any(|(x, y)| x - y != 32 * t)
            {
                f.push(format!(
                    "shift identity fails for {:?}, t={}",
                    f0.counts(),
                    t
                ));
            }
            if kt != fam.kt || at != fam.at {
                f.push("periodic_extend disagrees with direct evaluation".into());
            }
        }
    }
}

fn criterion7(f: &mut Vec<String>) {
    let ex = golden_examples().unwrap();
    let k10 = equation_for(&WordType::from_label("10").unwrap()).unwrap();
    let k02 = equation_for(&WordType::from_label("02").unwrap()).unwrap();
    let sum = ca_add(&k10, &k02).unwrap();
    expect(f, "k10", &ex.ca_sum.k10, &k10.coeffs);
    expect(f, "k02", &ex.ca_sum.k02, &k02.coeffs);
    expect(f, "k10 + k02", &ex.ca_sum.k10_plus_k02, &sum.coeffs);
    expect(f, "f_11 coefficient", 1, sum.coeffs[5]);
    expect(f, "f_21 coefficient", 0, sum.coeffs[9]);

    let k11 = equation_for(&WordType::from_label("11").unwrap()).unwrap();
    for (c, cells) in [
        (0u8, &ex.k11_classes.c0),
        (1, &ex.k11_classes.c1),
        (2, &ex.k11_classes.c2),
    ] {
        let mut want = cells.clone();
        want.sort();
        let mut got: Vec<String> = (0..16)
            .filter(|&i| k11.coeffs[i] == c)
            .map(|i| qcode_core::z4::label(&cell_pattern(i, 2)))
            .collect();
        got.sort();
        expect(f, &format!("C_{}", c), want, got);
    }
}

fn criterion8(f: &mut Vec<String>) {
    let mut rng = common::rng(8);
    let total = BigRational::from_integer(BigInt::from(63));
    for _ in 0..50 {
        let g = common::random_p3_valid(&mut rng, &[3, 4]);
        let th = analyze(&g, Method::Theory, &AnalyzeOptions::default()).unwrap();
        let d = build_design(&g).unwrap();
        let oracle = summarize(
            &spectrum_bruteforce(&d, d.factors(), false).unwrap(),
            d.factors(),
        );
        if th.summary.gwlp_mass() != total || oracle.gwlp_mass() != total {
            f.push(format!(
                "V={:?}: theory mass {}, oracle mass {}",
                g.rows_as_ints(),
                th.summary.gwlp_mass(),
                oracle.gwlp_mass()
            ));
        }
    }
}

fn criterion9(f: &mut Vec<String>) {
    let hits = search(4, 3, Criterion::MaxResolution, 1, false).unwrap();
    let best = hits[0].report.summary.resolution.exact().cloned();
    let bound = BigRational::new(BigInt::from(13), BigInt::from(2));
    match best {
        Some(r) if r >= bound => println!(
            "    best resolution {} with V = {:?}",
            r,
            hits[0].witness.rows_as_ints()
        ),
        other => f.push(format!("best resolution {:?} below 13/2", other)),
    }
}

#[test]
fn acceptance() {
    let outcomes = vec![
        run(
            1,
            "golden C/B matrices, constants and deltas",
            1,
            criterion1,
        ),
        run(2, "256-run design end to end", 61, criterion2),
        run(3, "theory vs brute-force spectra", 600, criterion3),
        run(4, "all-odd equation structure", 1, criterion4),
        run(
            5,
            "canonical type counts and representatives",
            5,
            criterion5,
        ),
        run(6, "periodic extension and shift identities", 5, criterion6),
        run(7, "CA operator fixtures", 1, criterion7),
        run(8, "GWLP mass law", 300, criterion8),
        run(9, "search sanity for n=4, p=3", 600, criterion9),
    ];

    let mut unexpected = Vec::new();
    for o in &outcomes {
        let known = KNOWN_RED.iter().find(|(id, _)| *id == o.id);
        println!(
            "criterion {}: {} ({}, {:.2?})",
            o.id,
            if o.passed() { "PASS" } else { "FAIL" },
            o.title,
            o.elapsed
        );
        if o.elapsed > o.limit {
            println!("    over the {:?} limit", o.limit);
        }
        for msg in &o.failures {
            println!("    {}", msg);
        }
        match (o.passed(), known) {
            (false, Some((_, why))) => println!("    known: {}", why),
            (false, None) => unexpected.push(o.id),
            (true, Some(_)) => unexpected.push(o.id),
            (true, None) => {}
        }
    }
    assert!(
        unexpected.is_empty(),
        "criteria with unexpected status: {:?}",
        unexpected
    );
}
