//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines always reach stdout.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;

use ptvertex::points::seeded_point;
use ptvertex_core::arith::series::macmahon_minus_q;
use ptvertex_core::arith::{ratio, Coefficient, QLaurentSeries, RatFuncS};
use ptvertex_core::boxconfig::{brute_force_submodules, enumerate_components};
use ptvertex_core::characters::{con_parity_pair, edge_characters, redistributed_vertex_character};
use ptvertex_core::dt::{cy_correspondence_check, dt_equivariant_vertex_series, enumerate_3d_partitions};
use ptvertex_core::localization::{
    cy_specialization_check, cy_vertex_series, descendent_vertex_series, pt_vertex_series, Mode, SeriesValues,
    VertexSeries,
};
use ptvertex_core::partitions::{renormalized_volume, LegTriple, Partition2D};
use ptvertex_core::toric::{assemble_cy_pt, conifold, CurveClassSpec};
use ptvertex_core::Error;

type Outcome = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);
type SeriesRun = dyn Fn(&Mode) -> ptvertex_core::Result<VertexSeries>;

fn legs(s: &str) -> LegTriple {
    s.parse().unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn symbolic(v: VertexSeries) -> QLaurentSeries<RatFuncS> {
    match v.values {
        SeriesValues::Symbolic(s) => s,
        SeriesValues::Numeric(_) => unreachable!("symbolic mode"),
    }
}

fn ints(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

/// Coefficients of `(-q)^n` for `n` in `from..=to`.
fn minus_q(s: &QLaurentSeries<BigInt>, from: i64, to: i64) -> Vec<BigInt> {
    let s = s.flip_sign();
    (from..=to).map(|n| s.coefficient(n).unwrap_or_default()).collect()
}

fn cy_vertex() -> Outcome {
    let s = cy_vertex_series(&legs("1;2;1"), 0).map_err(|e| e.to_string())?;
    let got = minus_q(&s.series, -3, 0);
    ensure(got == ints(&[1, 2, 4, 7]), || format!("got {:?}", got))?;
    ensure(s.series.lowest() == -3, || format!("lowest {}", s.series.lowest()))?;
    Ok("(-q)^-3 (1 + 2(-q) + 4(-q)^2 + 7(-q)^3)".into())
}

fn partition_counts(l: &LegTriple, n: usize) -> Vec<BigInt> {
    let base = renormalized_volume(l);
    let parts = enumerate_3d_partitions(l, base + n as i64 - 1);
    (0..n as i64).map(|k| BigInt::from(parts.iter().filter(|p| p.renorm_volume == base + k).count())).collect()
}

fn dt_counts() -> Outcome {
    let a = partition_counts(&legs("1;2;1"), 4);
    ensure(a == ints(&[1, 3, 9, 23]), || format!("legs 1;2;1: {:?}", a))?;
    let b = partition_counts(&LegTriple::empty(), 4);
    ensure(b == ints(&[1, 1, 3, 6]), || format!("empty legs: {:?}", b))?;
    Ok("(1,3,9,23) and (1,1,3,6)".into())
}

fn correspondence() -> Outcome {
    // (1 + 2x + 4x^2 + 7x^3) M(x) with M(x) = 1 + x + 3x^2 + 6x^3.
    let p = [1i64, 2, 4, 7];
    let m = [1i64, 1, 3, 6];
    let want: Vec<i64> = (0..4).map(|n| (0..=n).map(|j| p[j] * m[n - j]).sum()).collect();
    ensure(want == [1, 3, 9, 23], || format!("oracle {:?}", want))?;

    let l = legs("1;2;1");
    let r = cy_correspondence_check(&l, 0).map_err(|e| e.to_string())?;
    ensure(r.matches(), || format!("mismatch at {:?}", r.mismatches))?;
    let pt = cy_vertex_series(&l, 0).map_err(|e| e.to_string())?.series;
    let prod = pt.times(&macmahon_minus_q(3));
    let got = minus_q(&prod, -3, 0);
    ensure(got == ints(&want), || format!("product {:?}", got))?;
    Ok("1 + 3(-q) + 9(-q)^2 + 23(-q)^3 mod q^4".into())
}

/// `binomial((s2 + s3)/s1, k)`.
fn binomial(k: i64) -> RatFuncS {
    let x = RatFuncS::linear([0, 1, 1]).div(&RatFuncS::var(0)).unwrap();
    let mut acc = RatFuncS::one();
    for j in 0..k {
        let f = x.sub(&RatFuncS::from_i64(j)).mul(&RatFuncS::from_rational(ratio(1, j + 1)));
        acc = acc.mul(&f);
    }
    acc
}

fn one_leg_binomials() -> Outcome {
    let s = symbolic(pt_vertex_series(&legs("1;-;-"), 6, &Mode::Symbolic).map_err(|e| e.to_string())?);
    for k in 0..=6 {
        let got = s.coefficient(k).unwrap();
        let want = binomial(k);
        ensure(got == want, || format!("q^{}: {} != {}", k, got, want))?;
    }
    Ok("q^0..q^6 equal binomial((s2+s3)/s1, k)".into())
}

fn degree_zero_dt() -> Outcome {
    let s = symbolic(dt_equivariant_vertex_series(&LegTriple::empty(), 2, &Mode::Symbolic).map_err(|e| e.to_string())?);
    // M(-q) = 1 + u with u = -q + 3q^2 + ..., so M(-q)^a = 1 - a q + (3a + a(a-1)/2) q^2 + ...
    let num = RatFuncS::linear([1, 1, 0]).mul(&RatFuncS::linear([1, 0, 1])).mul(&RatFuncS::linear([0, 1, 1]));
    let den = RatFuncS::var(0).mul(&RatFuncS::var(1)).mul(&RatFuncS::var(2));
    let a = num.div(&den).unwrap().neg();
    let q1 = a.neg();
    let half = RatFuncS::from_rational(ratio(1, 2));
    let q2 = a.mul(&RatFuncS::from_i64(3)).add(&a.mul(&a.sub(&RatFuncS::one())).mul(&half));
    ensure(s.coefficient(1).unwrap() == q1, || format!("q^1: {}", s.coefficient(1).unwrap()))?;
    ensure(s.coefficient(2).unwrap() == q2, || format!("q^2: {}", s.coefficient(2).unwrap()))?;
    Ok("q^1 and q^2 of M(-q)^(-(s1+s2)(s1+s3)(s2+s3)/(s1 s2 s3))".into())
}

/// `sum_{j<=n} L^j z^j / j!` as a coefficient vector in `z`.
fn exp_series(l: [i64; 3], n: usize) -> Vec<RatFuncS> {
    let lin = RatFuncS::linear(l);
    let mut out = vec![RatFuncS::one()];
    for j in 1..=n {
        let next = out[j - 1].mul(&lin).mul(&RatFuncS::from_rational(ratio(1, j as i64)));
        out.push(next);
    }
    out
}

fn z_mul(a: &[RatFuncS], b: &[RatFuncS]) -> Vec<RatFuncS> {
    let n = a.len().min(b.len());
    (0..n).map(|k| (0..=k).fold(RatFuncS::zero(), |acc, j| acc.add(&a[j].mul(&b[k - j])))).collect()
}

fn one_minus(a: &[RatFuncS]) -> Vec<RatFuncS> {
    a.iter().enumerate().map(|(j, c)| if j == 0 { RatFuncS::one().sub(c) } else { c.neg() }).collect()
}

fn descendent_identity() -> Outcome {
    let l = legs("1;-;-");
    let mut checked = 0;
    for i in -2i32..=2 {
        let n = (2 + i) as usize;
        let s = symbolic(descendent_vertex_series(&l, &[i], 4, &Mode::Symbolic).map_err(|e| e.to_string())?);
        for k in 0..=4i64 {
            // [z^n q^k] of (1 - e^{z s2})(1 - e^{z s3}) e^{-k z s1} (1+q)^{(s2+s3)/s1}.
            let f = z_mul(
                &z_mul(&one_minus(&exp_series([0, 1, 0], n)), &one_minus(&exp_series([0, 0, 1], n))),
                &exp_series([-k, 0, 0], n),
            );
            let want = f[n].mul(&binomial(k));
            let got = s.coefficient(k).unwrap();
            ensure(got == want, || format!("tau_{} q^{}: {} != {}", i, k, got, want))?;
            checked += 1;
        }
    }
    Ok(format!("{} coefficients, i in -2..2, k in 0..4", checked))
}

fn conifold_degree_one() -> Outcome {
    let z = assemble_cy_pt(&conifold(), &CurveClassSpec::single(0, 1), 6).map_err(|e| e.to_string())?;
    for k in 0..=6i64 {
        let want = BigInt::from(if k % 2 == 1 { k } else { -k });
        let got = z.series.coefficient(k).unwrap_or_default();
        ensure(got == want, || format!("q^{}: {} != {}", k, got, want))?;
    }
    Ok("q/(1+q)^2 through q^6".into())
}

fn triples(max_total: u32, max_nonempty: usize) -> Vec<LegTriple> {
    let mut out = Vec::new();
    for a in 0..=max_total {
        for b in 0..=max_total - a {
            for c in 0..=max_total - a - b {
                for p in Partition2D::all_of_size(a) {
                    for q in Partition2D::all_of_size(b) {
                        for r in Partition2D::all_of_size(c) {
                            let l = LegTriple::new(p.clone(), q.clone(), r.clone());
                            if l.nonempty_count() <= max_nonempty {
                                out.push(l);
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

fn modes_agree(seed0: u64, run: &SeriesRun) -> Result<(), String> {
    let sym = run(&Mode::Symbolic).map_err(|e| e.to_string())?.values;
    let mut seed = seed0;
    let mut checked = 0;
    while checked < 20 {
        let p = seeded_point(seed);
        seed += 1;
        let num = match run(&Mode::Numeric(p.clone())) {
            Err(Error::DegenerateEvaluationPoint { .. }) => continue,
            Err(e) => return Err(e.to_string()),
            Ok(v) => v.values,
        };
        let Ok(ev) = sym.evaluate(&p) else { continue };
        ensure(SeriesValues::Numeric(ev) == num, || format!("disagree at seed {}", seed - 1))?;
        checked += 1;
    }
    Ok(())
}

fn property_suite() -> Outcome {
    let mut families = 0;
    let mut records = 0;
    for l in triples(4, 3) {
        let recs = enumerate_components(&l, 4);
        let mut ours: Vec<(u32, u32)> = recs.iter().map(|r| (r.length, r.dimension)).collect();
        ours.sort();
        let census = brute_force_submodules(&l, 4);
        ensure(ours == census.families, || format!("(a) legs {}", l))?;
        families += ours.len();
        for r in &recs {
            ensure(r.euler_char == 1u64 << r.dimension, || format!("(b) legs {}", l))?;
            redistributed_vertex_character(r).map_err(|e| format!("(c) legs {}: {}", l, e))?;
            records += 1;
        }
    }
    for n in 0..=5 {
        for mu in Partition2D::all_of_size(n) {
            for m in -4..=4 {
                for mp in -4..=4 {
                    edge_characters(&mu, (m, mp)).map_err(|e| format!("(c) edge {} {:?}: {}", mu, (m, mp), e))?;
                }
            }
        }
    }
    let mut parity = 0;
    for l in triples(3, 2) {
        for r in enumerate_components(&l, 6) {
            let (a, b) = con_parity_pair(&r);
            ensure(a.rem_euclid(2) == 0 && b.rem_euclid(2) == 0, || format!("(d) odd, legs {}", l))?;
            parity += 1;
        }
        let c = cy_specialization_check(&l, 4, false).map_err(|e| format!("(e) legs {}: {}", l, e))?;
        ensure(c.matches(), || format!("(e) legs {} at {:?}", l, c.mismatches))?;
    }
    let series: Vec<(&str, Box<SeriesRun>)> = vec![
        ("1;-;-", Box::new(|m: &Mode| pt_vertex_series(&legs("1;-;-"), 3, m))),
        ("1;1;-", Box::new(|m: &Mode| pt_vertex_series(&legs("1;1;-"), 2, m))),
        ("2;-;1", Box::new(|m: &Mode| pt_vertex_series(&legs("2;-;1"), 3, m))),
        ("1;2;1", Box::new(|m: &Mode| pt_vertex_series(&legs("1;2;1"), -1, m))),
        ("tau_1", Box::new(|m: &Mode| descendent_vertex_series(&legs("1;-;-"), &[1], 3, m))),
        ("dt", Box::new(|m: &Mode| dt_equivariant_vertex_series(&legs("1;-;-"), 2, m))),
    ];
    for (i, (name, run)) in series.iter().enumerate() {
        modes_agree(1000 * i as u64, run.as_ref()).map_err(|e| format!("(f) {}: {}", name, e))?;
    }
    Ok(format!(
        "{} families, {} records, {} parity cases, {} series x 20 points",
        families,
        records,
        parity,
        series.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 CY vertex (1),(2),(1)", Duration::from_secs(5), cy_vertex),
        ("2 DT partition counts", Duration::from_secs(10), dt_counts),
        ("3 order-3 correspondence", Duration::from_secs(60), correspondence),
        ("4 one-leg binomials", Duration::from_secs(30), one_leg_binomials),
        ("5 degree-0 DT vertex", Duration::from_secs(60), degree_zero_dt),
        ("6 one-leg descendents", Duration::from_secs(60), descendent_identity),
        ("7 conifold degree 1", Duration::from_secs(60), conifold_degree_one),
        ("8 property suite", Duration::from_secs(600), property_suite),
    ];
    let mut failed = 0;
    for (name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(d) if took <= limit => (true, d),
            Ok(d) => (false, format!("{}; too slow", d)),
            Err(e) => (false, e),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "{} {:<28} {:>8.2}s / {:>4}s  {}",
            if ok { "PASS" } else { "FAIL" },
            name,
            took.as_secs_f64(),
            limit.as_secs(),
            detail
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
