//! Acceptance gate. Runs each criterion, prints one PASS/FAIL line per
//! criterion and fails if any of them fails.
//!
//! All comparisons are exact integer equality; the only tolerances are the
//! wall-clock bounds below.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vbfcodes::boolfun::BooleanFunction;
use vbfcodes::codes::{
    build_code, contains_all_one, dual_distance_at_least_3, full_rank_hypothesis, parameters,
    weight_distribution_enum, weight_distribution_walsh, CodeSpec, WeightDistribution,
};
use vbfcodes::gf2m::FieldSpec;
use vbfcodes::theory::{self, ZeroConvention};
use vbfcodes::vecfun::{gold, inverse_root, kasami, mm_product, niho, welch, VectorialFunction};
use vbfcodes::verify::{verify, Report, Target, VerifyParams};

const EACH_REMARK1: Duration = Duration::from_secs(1);
const ALL_REMARK2: Duration = Duration::from_secs(5);
const ALL_SUBCODES: Duration = Duration::from_secs(2);
const ALL_TABLES: Duration = Duration::from_secs(30);
const KLOOSTERMAN: Duration = Duration::from_secs(1);
const LEMMAS: Duration = Duration::from_secs(60);
const MIN_TABLE_INSTANCES: usize = 20;

type Check = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(label: &str, start: Instant, bound: Duration) -> std::result::Result<Duration, String> {
    let t = start.elapsed();
    ensure(t < bound, || format!("{label} took {t:?}, bound {bound:?}"))?;
    Ok(t)
}

/// A reference code with known parameters and enumerator.
struct Printed {
    spec_fn: fn(&VectorialFunction) -> CodeSpec<'_>,
    function: fn() -> VectorialFunction,
    params: &'static str,
    enumerator: &'static str,
}

/// Everything the structural criterion needs about one built code.
struct Built {
    label: String,
    subcode: bool,
    full_rank: usize,
    dimension: usize,
    all_one: bool,
    dual3: bool,
    walsh_equal: Option<bool>,
}

fn build_printed(p: &Printed) -> std::result::Result<Built, String> {
    let f = (p.function)();
    let spec = (p.spec_fn)(&f);
    let code = build_code(&spec).map_err(|e| e.to_string())?;
    let wd = weight_distribution_enum(&code).map_err(|e| e.to_string())?;
    let got = parameters(&code, &wd).to_string();
    ensure(got == p.params, || format!("parameters {got}, expected {}", p.params))?;
    ensure(wd.enumerator_string() == p.enumerator, || {
        format!("{}: enumerator {}, expected {}", p.params, wd.enumerator_string(), p.enumerator)
    })?;
    let walsh_equal = (code.dimension() == spec.full_rank())
        .then(|| weight_distribution_walsh(&spec).map(|w| w == wd))
        .transpose()
        .map_err(|e| e.to_string())?;
    Ok(Built {
        label: p.params.to_owned(),
        subcode: spec.is_subcode(),
        full_rank: spec.full_rank(),
        dimension: code.dimension(),
        all_one: contains_all_one(&code),
        dual3: dual_distance_at_least_3(&code),
        walsh_equal,
    })
}

fn mm3() -> VectorialFunction {
    mm_product(3).unwrap()
}
fn mm4() -> VectorialFunction {
    mm_product(4).unwrap()
}
fn g5() -> VectorialFunction {
    gold(5, 1).unwrap()
}
fn g7() -> VectorialFunction {
    gold(7, 1).unwrap()
}
fn g9() -> VectorialFunction {
    gold(9, 1).unwrap()
}

fn plain(f: &VectorialFunction) -> CodeSpec<'_> {
    CodeSpec::new(f, 1)
}
fn complemented(f: &VectorialFunction) -> CodeSpec<'_> {
    CodeSpec::new(f, 1).offset(0, true)
}

macro_rules! shifted {
    ($name:ident, $k:expr) => {
        fn $name(f: &VectorialFunction) -> CodeSpec<'_> {
            CodeSpec::new(f, 1).offset(f.input_field().alpha_pow($k), false)
        }
    };
}
shifted!(alpha0, 0);
shifted!(alpha3, 3);
shifted!(alpha7, 7);
shifted!(alpha9, 9);
shifted!(alpha10, 10);
shifted!(alpha19, 19);

fn example1(f: &VectorialFunction) -> CodeSpec<'_> {
    let k = f.output_field();
    let basis: Vec<u32> = (1..4).map(|i| k.alpha_pow(i)).collect();
    CodeSpec::new(f, 1).subcode(k.hyperplane_normal(&basis).unwrap())
}
fn example2(f: &VectorialFunction) -> CodeSpec<'_> {
    CodeSpec::new(f, 1).subcode_default().unwrap()
}

const REMARK1: [Printed; 4] = [
    Printed { function: mm3, spec_fn: plain, params: "[28,9,10]", enumerator: "1+84z^{10}+63z^{12}+216z^{14}+63z^{16}+84z^{18}+z^{28}" },
    Printed { function: mm3, spec_fn: complemented, params: "[36,9,14]", enumerator: "1+108z^{14}+63z^{16}+168z^{18}+63z^{20}+108z^{22}+z^{36}" },
    Printed { function: mm4, spec_fn: plain, params: "[120,12,52]", enumerator: "1+840z^{52}+255z^{56}+1904z^{60}+255z^{64}+840z^{68}+z^{120}" },
    Printed { function: mm4, spec_fn: complemented, params: "[136,12,60]", enumerator: "1+952z^{60}+255z^{64}+1680z^{68}+255z^{72}+952z^{76}+z^{136}" },
];

const REMARK2: [Printed; 9] = [
    Printed { function: g5, spec_fn: alpha3, params: "[12,10,2]", enumerator: "1+30z^2+255z^4+452z^6+255z^8+30z^{10}+z^{12}" },
    Printed { function: g5, spec_fn: plain, params: "[16,10,4]", enumerator: "1+60z^4+256z^6+390z^8+256z^{10}+60z^{12}+z^{16}" },
    Printed { function: g5, spec_fn: alpha0, params: "[20,10,6]", enumerator: "1+90z^6+255z^8+332z^{10}+255z^{12}+90z^{14}+z^{20}" },
    Printed { function: g7, spec_fn: alpha7, params: "[56,14,20]", enumerator: "1+756z^{20}+4095z^{24}+6680z^{28}+4095z^{32}+756z^{36}+z^{56}" },
    Printed { function: g7, spec_fn: plain, params: "[64,14,24]", enumerator: "1+1008z^{24}+4096z^{28}+6174z^{32}+4096z^{36}+1008z^{40}+z^{64}" },
    Printed { function: g7, spec_fn: alpha19, params: "[72,14,28]", enumerator: "1+1260z^{28}+4095z^{32}+5672z^{36}+4095z^{40}+1260z^{44}+z^{72}" },
    Printed { function: g9, spec_fn: alpha9, params: "[240,18,104]", enumerator: "1+14280z^{104}+65535z^{112}+102512z^{120}+65535z^{128}+14280z^{136}+z^{240}" },
    Printed { function: g9, spec_fn: plain, params: "[256,18,112]", enumerator: "1+16320z^{112}+65536z^{120}+98430z^{128}+65536z^{136}+16320z^{144}+z^{256}" },
    Printed { function: g9, spec_fn: alpha10, params: "[272,18,120]", enumerator: "1+18360z^{120}+65535z^{128}+94352z^{136}+65535z^{144}+18360z^{152}+z^{272}" },
];

const SUBCODES: [Printed; 2] = [
    Printed { function: mm4, spec_fn: example1, params: "[120,11,52]", enumerator: "1+420z^{52}+120z^{56}+952z^{60}+135z^{64}+420z^{68}" },
    Printed { function: g9, spec_fn: example2, params: "[256,17,112]", enumerator: "1+8172z^{112}+32736z^{120}+49215z^{128}+32800z^{136}+8148z^{144}" },
];

#[derive(Default)]
struct State {
    printed: Vec<Built>,
    tables: Vec<Report>,
}

fn criterion1(st: &mut State) -> Check {
    let mut worst = Duration::ZERO;
    for p in &REMARK1 {
        let start = Instant::now();
        let b = build_printed(p)?;
        worst = worst.max(within(p.params, start, EACH_REMARK1)?);
        st.printed.push(b);
    }
    Ok(format!("4 codes exact, slowest {worst:.2?}"))
}

fn criterion2(st: &mut State) -> Check {
    let start = Instant::now();
    for p in &REMARK2 {
        st.printed.push(build_printed(p)?);
    }
    let t = within("remark2 sweep", start, ALL_REMARK2)?;
    Ok(format!("9 codes exact in {t:.2?}"))
}

fn criterion3(st: &mut State) -> Check {
    let start = Instant::now();
    for p in &SUBCODES {
        st.printed.push(build_printed(p)?);
    }
    let t = within("subcodes", start, ALL_SUBCODES)?;
    Ok(format!("2 subcodes exact in {t:.2?}"))
}

fn criterion4(st: &mut State) -> Check {
    let start = Instant::now();
    let mut counts = Vec::new();
    for t in [Target::Table1, Target::Table2, Target::Table3, Target::Table5] {
        let r = verify(t, &VerifyParams::default()).map_err(|e| e.to_string())?;
        ensure(r.pass, || r.summary())?;
        ensure(r.instances >= MIN_TABLE_INSTANCES, || {
            format!("{t}: only {} instances", r.instances)
        })?;
        counts.push(format!("{t}={}", r.instances));
        st.tables.push(r);
    }
    let t = within("table sweeps", start, ALL_TABLES)?;
    Ok(format!("instances {} in {t:.2?}", counts.join(" ")))
}

fn criterion5(st: &State) -> Check {
    let mut compared = 0;
    for b in &st.printed {
        ensure(b.dimension == b.full_rank, || format!("{} is not full rank", b.label))?;
        ensure(b.walsh_equal == Some(true), || format!("{}: Walsh route differs", b.label))?;
        compared += 1;
    }
    for r in &st.tables {
        let full_rank = r
            .rows
            .iter()
            .filter(|row| row.w == "dimension" && row.matches)
            .count();
        let walsh: Vec<_> = r.rows.iter().filter(|row| row.w == "walsh route").collect();
        ensure(walsh.len() == full_rank, || {
            format!("{}: {} full-rank instances but {} Walsh comparisons", r.target, full_rank, walsh.len())
        })?;
        ensure(walsh.iter().all(|row| row.matches), || format!("{}: Walsh route differs", r.target))?;
        compared += walsh.len();
    }
    Ok(format!("{compared} full-rank codes, Walsh route = enumeration"))
}

fn criterion6() -> Check {
    let start = Instant::now();
    for m in 1..=15 {
        let (c, b) = (theory::kloosterman_closed(m), theory::kloosterman_brute(m).map_err(|e| e.to_string())?);
        ensure(c == b, || format!("m={m}: closed {c}, brute {b}"))?;
    }
    let k9 = theory::kloosterman_closed(9);
    ensure(k9 == -4, || format!("K(1) = {k9} at m = 9"))?;
    let p = theory::table5(9).map_err(|e| e.to_string())?;
    let printed = WeightDistribution::parse_enumerator(SUBCODES[1].enumerator).map_err(|e| e.to_string())?;
    ensure(p.distribution == printed, || {
        format!("table5 at m = 9 gives {}, example2 lists {}", p.distribution, printed)
    })?;
    let t = within("Kloosterman", start, KLOOSTERMAN)?;
    Ok(format!("m = 1..=15 agree, K(1) = -4 reproduces example2, {t:.2?}"))
}

fn ab_family(m: u32) -> Vec<VectorialFunction> {
    vec![gold(m, 1).unwrap(), welch(m).unwrap(), niho(m).unwrap(), kasami(m, 2).unwrap()]
}

fn criterion7() -> Check {
    let start = Instant::now();
    let err = |e: vbfcodes::Error| e.to_string();

    // lemma1 on 100 semi-bent components, alternating f(0).
    let mut semibent = 0;
    'outer: for m in [5, 7, 9] {
        for f in ab_family(m) {
            for lambda in 1..(1u32 << m) {
                let mut g = f.component(lambda).map_err(err)?;
                if semibent % 2 == 1 {
                    g = g.affine_shift(0, true).map_err(err)?;
                }
                let c = theory::anne_counts(&g, m.div_ceil(2)).map_err(err)?;
                ensure(c.matches(), || format!("lemma1, m={m} lambda={lambda}: {c:?}"))?;
                semibent += 1;
                if semibent == 100 {
                    break 'outer;
                }
                if lambda > 10 {
                    break;
                }
            }
        }
    }
    ensure(semibent == 100, || format!("only {semibent} semi-bent components"))?;

    // lemma2, five values, three lambdas each.
    for f in [g5(), g7()] {
        let k = f.output_field();
        let pred = theory::walsh_diff_prediction(f.m()).map_err(err)?;
        for lambda in [1, k.generator(), k.alpha_pow(5)] {
            let got = theory::walsh_diff_counts(&f, lambda).map_err(err)?;
            ensure(got == pred, || format!("lemma2, m={} lambda={lambda}", f.m()))?;
        }
    }

    // lemma4: autocorrelation triple and the zero set's normal.
    for m in [5, 7, 9] {
        let f = gold(m, 1).unwrap();
        let k = f.input_field();
        let size = 1i64 << m;
        for lambda in [1, k.generator(), k.alpha_pow(11)] {
            let g = f.component(lambda).map_err(err)?;
            let normal = inverse_root(k, lambda, 3).map_err(err)?;
            let mut minus = 0;
            for b in k.elements() {
                let a = g.autocorrelation(b);
                let expected = match b {
                    0 => size,
                    b if b == normal => -size,
                    _ => 0,
                };
                ensure(a == expected, || format!("lemma4, m={m} lambda={lambda} b={b}: {a}"))?;
                minus += (a == -size) as u32;
            }
            ensure(minus == 1, || "lemma4: -2^m taken more than once".into())?;
            let z = g.zero_walsh_set();
            ensure(z.is_subspace && z.dimension == Some(m - 1), || format!("lemma4, m={m}: T not a hyperplane"))?;
            ensure(z.hyperplane_normal == Some(normal), || format!("lemma4 normal, m={m} lambda={lambda}"))?;
        }
    }

    // lemma6 for five normals.
    let g = g7().component(1).map_err(err)?;
    let t_normal = g.zero_walsh_set().hyperplane_normal;
    let k7 = FieldSpec::with_default_modulus(7).unwrap();
    let normals: Vec<u32> = (0..20u64).map(|j| k7.alpha_pow(j)).filter(|&u| Some(u) != t_normal).take(5).collect();
    for &u in &normals {
        let c = theory::hyperplane_walsh_counts(&g, u).map_err(err)?;
        ensure(c.matches(), || format!("lemma6, u={u}: {c:?}"))?;
    }

    // lemma7 on 100 random pairs at m = 8.
    let k8 = FieldSpec::with_default_modulus(8).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for j in 0..100 {
        let a = BooleanFunction::from_fn(k8, |_| rng.gen());
        let b = BooleanFunction::from_fn(k8, |_| rng.gen());
        let s = theory::squaresum_identity_check(&a, &b).map_err(err)?;
        ensure(s.holds(), || format!("lemma7, pair {j}: {s:?}"))?;
    }

    // lemma8 for gold(9, 1) at five pairs.
    let f9 = g9();
    let k9 = f9.input_field();
    let a = |j| k9.alpha_pow(j);
    for (lambda, mu) in [(1, a(1)), (a(1), 1), (1, a(2)), (a(3), a(7)), (a(100), a(5))] {
        let d = theory::s_lambda_distribution(&f9, lambda, mu).map_err(err)?;
        ensure(d.predicted == d.empirical, || {
            format!("lemma8, lambda={lambda} mu={mu}: {} vs {}", d.predicted, d.empirical)
        })?;
    }

    // lemma11 pair counts.
    for m in [5, 7, 9] {
        let k = FieldSpec::with_default_modulus(m).unwrap();
        for mu in [1, k.generator(), k.alpha_pow(3)] {
            let c = theory::kloo_pairs_counts(m, mu, ZeroConvention::InverseAsZero).map_err(err)?;
            ensure(c.matches(), || format!("lemma11, m={m} mu={mu}: {c:?}"))?;
        }
    }

    let t = within("lemma suite", start, LEMMAS)?;
    Ok(format!("lemma1, 2, 4, 6, 7, 8, 11 exact in {t:.2?}"))
}

fn criterion8(st: &State) -> Check {
    let mut codes = 0;
    for b in &st.printed {
        ensure(b.dimension == b.full_rank, || format!("{}: dimension {}", b.label, b.dimension))?;
        ensure(b.all_one == !b.subcode, || format!("{}: all-one membership {}", b.label, b.all_one))?;
        ensure(b.dual3, || format!("{}: dual distance below 3", b.label))?;
        codes += 1;
    }
    for r in &st.tables {
        for row in &r.rows {
            if ["dimension", "all-one word", "dual distance >= 3"].contains(&row.w.as_str().unwrap_or("")) {
                ensure(row.matches, || {
                    format!("{} {}: {} predicted {} got {}", r.target, row.instance.as_deref().unwrap_or(""), row.w, row.predicted, row.empirical)
                })?;
            }
        }
        codes += r.instances;
    }
    // The table instances satisfy the full-rank hypothesis.
    for f in [mm4(), g7()] {
        for lambda in 1..8 {
            let spec = CodeSpec::new(&f, lambda);
            ensure(full_rank_hypothesis(&spec).unwrap(), || format!("hypothesis fails at lambda={lambda}"))?;
        }
    }
    for t in [Target::Proposition1, Target::Theorem5] {
        let r = verify(t, &VerifyParams::default()).map_err(|e| e.to_string())?;
        ensure(r.pass, || r.summary())?;
        codes += r.instances;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for m in 4..=10 {
        let k = FieldSpec::with_default_modulus(m).unwrap();
        for _ in 0..1000 {
            let f = BooleanFunction::from_fn(k, |_| rng.gen());
            let s = f.walsh_full().square_sum();
            ensure(s == 1i128 << (2 * m), || format!("Parseval fails at m={m}: {s}"))?;
        }
    }
    Ok(format!("{codes} codes structurally checked, Parseval on 7000 functions"))
}

// Runs without the libtest harness so the criterion lines are never captured.
fn main() {
    let mut st = State::default();
    let results: Vec<(u32, &str, Check)> = vec![
        (1, "exact enumerators, bent full codes", criterion1(&mut st)),
        (2, "exact enumerators, almost bent full codes", criterion2(&mut st)),
        (3, "exact enumerators, subcodes", criterion3(&mut st)),
        (4, "closed-form tables", criterion4(&mut st)),
        (5, "Walsh route equals enumeration", criterion5(&st)),
        (6, "Kloosterman sums", criterion6()),
        (7, "lemma suite", criterion7()),
        (8, "structural properties", criterion8(&st)),
    ];
    let mut failed = Vec::new();
    for (n, name, r) in &results {
        match r {
            Ok(detail) => println!("criterion {n} PASS  {name}: {detail}"),
            Err(why) => {
                println!("criterion {n} FAIL  {name}: {why}");
                failed.push(*n);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
