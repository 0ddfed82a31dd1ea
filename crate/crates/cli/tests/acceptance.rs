//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

#![allow(clippy::needless_range_loop)]

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use qseq_core::bdproc::{p00_series, Mm1Rates};
use qseq_core::cfhankel::{
    hankel_determinant_oracle, hankel_from_sfraction, series_to_sfraction, sfraction_to_series, CfExpansion,
    SFraction,
};
use qseq_core::mg1wait::{
    catalan_mixing_recursion, catalan_waiting_moments, pk_waiting_series, takacs_moments, ServiceMoments,
};
use qseq_core::mm1seq::{
    busy_coefficient, busy_coefficient_rec, emptiness_coefficient, emptiness_coefficient_alternating,
    emptiness_coefficient_rec, excess_coefficient, family_moments, family_series, hankel_closed_form, FamilyTag,
    SigmaParameter,
};
use qseq_core::momentops::{exp_mixture, gf_to_moments, invert_operator, stationary_excess};
use qseq_core::numeval::{catalan_egf, catalan_egf_partial_sum, quad_moment, quad_weighted, DensitySpec};
use qseq_core::ratcore::{int, ratio};
use qseq_core::{Rational, TruncatedSeries};
use qseq_oeis::{SequenceStore, Verdict, DEFAULT_MAX_SHIFT};

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn sigma(p: i64, q: i64) -> SigmaParameter {
    SigmaParameter::new(ratio(p, q)).unwrap()
}

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

fn big(v: &[Rational]) -> Vec<BigInt> {
    v.iter().map(|r| r.to_integer()).collect()
}

fn show(v: &[Rational]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn factorial(n: usize) -> Rational {
    (1..=n as i64).fold(int(1), |acc, k| acc * int(k))
}

/// `C_{n+1} = C_n 2(2n+1)/(n+2)`.
fn catalan_oracle(count: usize) -> Vec<Rational> {
    let mut out = vec![int(1)];
    while out.len() < count {
        let n = out.len() as i64 - 1;
        let next = out.last().unwrap() * int(2 * (2 * n + 1)) / int(n + 2);
        out.push(next);
    }
    out
}

fn busy_period_rows() -> Outcome {
    let rows = [
        (1, [1, 1, 2, 6, 22, 90, 394]),
        (2, [1, 1, 3, 15, 93, 645, 4791]),
        (3, [1, 1, 4, 28, 244, 2380, 24868]),
    ];
    for (s, row) in rows {
        let sg = sigma(s, 1);
        let explicit: Vec<Rational> = (0..=6).map(|n| busy_coefficient(n, &sg)).collect();
        let recursive = busy_coefficient_rec(6, &sg);
        ensure(explicit == ints(&row), || format!("explicit sigma={s}: {}", show(&explicit)))?;
        ensure(recursive == ints(&row), || format!("recurrence sigma={s}: {}", show(&recursive)))?;
    }
    Ok("sigma = 1,2,3, n <= 6, explicit sum and recurrence".into())
}

fn moment_sequences() -> Outcome {
    let one = family_moments(FamilyTag::Busy, &sigma(1, 1), 5);
    let half = family_moments(FamilyTag::Busy, &sigma(1, 2), 5);
    ensure(one.values() == ints(&[1, 1, 4, 36, 528, 10800]), || format!("sigma=1: {}", show(one.values())))?;
    ensure(half.values() == ints(&[1, 1, 3, 18, 171, 2250]), || format!("sigma=1/2: {}", show(half.values())))?;
    Ok("n! b_n at sigma = 1 and 1/2".into())
}

fn emptiness_sequences() -> Outcome {
    let rows = [
        (1, [1, 1, 3, 11, 45, 197]),
        (2, [1, 2, 10, 62, 430, 3194]),
        (3, [1, 3, 21, 183, 1785, 18651]),
    ];
    for (s, row) in rows {
        let sg = sigma(s, 1);
        let shifted: Vec<Rational> = (0..=5).map(|n| emptiness_coefficient(n, &sg)).collect();
        let alternating: Vec<Rational> = (0..=5).map(|n| emptiness_coefficient_alternating(n, &sg)).collect();
        let recursive = emptiness_coefficient_rec(5, &sg);
        for (name, route) in [("shifted busy", &shifted), ("alternating sum", &alternating), ("recurrence", &recursive)] {
            ensure(*route == ints(&row), || format!("{name} sigma={s}: {}", show(route)))?;
        }
    }
    Ok("three routes agree, sigma = 1,2,3, n <= 5".into())
}

fn operator_identities() -> Outcome {
    const N: usize = 8;
    for s in 1..=3 {
        let sg = sigma(s, 1);
        let p = family_series(FamilyTag::Emptiness, &sg, N);
        let b = family_series(FamilyTag::Busy, &sg, N);
        let be = family_series(FamilyTag::BusyExcess, &sg, N);
        let em = exp_mixture(&p).map_err(|e| e.to_string())?;
        ensure(em == b, || format!("EM(p) != b at sigma={s}"))?;
        let inv = invert_operator(&p).map_err(|e| e.to_string())?;
        ensure(inv == be, || format!("invert(p) != b_e at sigma={s}"))?;
        ensure(p.mul(&b).unwrap() == be, || format!("p*b != b_e at sigma={s}"))?;

        let busy_m = gf_to_moments(&family_series(FamilyTag::Busy, &sg, N + 1)).unwrap();
        let twice = stationary_excess(&stationary_excess(&busy_m).unwrap()).unwrap();
        let empty_m = gf_to_moments(&p).unwrap();
        let once = stationary_excess(&empty_m).unwrap();
        let k = twice.len().min(once.len());
        ensure(k >= N && twice.values()[..k] == once.values()[..k], || {
            format!("excess^2(b) != excess(p) at sigma={s}")
        })?;
    }
    Ok("EM(p) = b, invert(p) = b_e = p b, excess^2(b) = excess(p); sigma = 1,2,3, N = 8".into())
}

fn catalan_fixed_point() -> Outcome {
    let c = TruncatedSeries::gf(catalan_oracle(11));
    let em = exp_mixture(&c).map_err(|e| e.to_string())?;
    ensure(em == c, || format!("EM(c) = {em}"))?;
    Ok("EM(c) = c through x^10".into())
}

fn table_row(tag: FamilyTag, s: &Rational, k: usize) -> Vec<Rational> {
    let one_plus = int(1) + s;
    (0..k)
        .map(|i| match tag {
            FamilyTag::Busy if i == 0 => int(1),
            FamilyTag::Busy => if i % 2 == 1 { s.clone() } else { one_plus.clone() },
            FamilyTag::BusyExcess => if i % 2 == 0 { one_plus.clone() } else { s.clone() },
            FamilyTag::Emptiness => if i % 2 == 0 { s.clone() } else { one_plus.clone() },
        })
        .collect()
}

fn continued_fractions() -> Outcome {
    const K: usize = 8;
    for s in 1..=3 {
        let sg = sigma(s, 1);
        for tag in FamilyTag::ALL {
            let series = family_series(tag, &sg, K);
            let expected = SFraction::new(table_row(tag, sg.value(), K));
            let cf = series_to_sfraction(&series, K).map_err(|e| e.to_string())?;
            ensure(cf == CfExpansion::Complete(expected.clone()), || {
                format!("{} sigma={s}: {cf:?}", tag.name())
            })?;
            ensure(sfraction_to_series(&expected, K) == series, || {
                format!("round trip {} sigma={s}", tag.name())
            })?;
        }
        let busy = family_series(FamilyTag::Busy, &sg, K);
        let shifted = series_to_sfraction(&exp_mixture(&busy).unwrap(), K).unwrap().into_fraction();
        let mut expected = vec![int(1)];
        expected.extend(series_to_sfraction(&busy, K - 1).unwrap().into_fraction().coeffs().iter().cloned());
        ensure(shifted.coeffs() == expected.as_slice(), || format!("EM shift at sigma={s}: {}", show(shifted.coeffs())))?;
    }
    Ok("three rows, sigma = 1,2,3, K = 8, round trip, EM right shift on busy".into())
}

fn hankel_transforms() -> Outcome {
    for sg in [sigma(1, 1), sigma(2, 1), sigma(3, 1), sigma(1, 2)] {
        for tag in FamilyTag::ALL {
            let series = family_series(tag, &sg, 10);
            let cf = series_to_sfraction(&series, 10).unwrap().into_fraction();
            let products = hankel_from_sfraction(&cf, 5).map_err(|e| e.to_string())?;
            for n in 0..=5 {
                let oracle = hankel_determinant_oracle(&series, n).map_err(|e| e.to_string())?;
                let closed = hankel_closed_form(tag, &sg, n);
                ensure(products[n] == oracle && oracle == closed, || {
                    format!("{} sigma={sg} n={n}: {} / {oracle} / {closed}", tag.name(), products[n])
                })?;
            }
        }
    }
    let catalan = TruncatedSeries::gf(catalan_oracle(13));
    let cf = series_to_sfraction(&catalan, 12).unwrap().into_fraction();
    let products = hankel_from_sfraction(&cf, 6).unwrap();
    for n in 0..=6 {
        let oracle = hankel_determinant_oracle(&catalan, n).unwrap();
        ensure(products[n].is_one() && oracle.is_one(), || format!("Catalan H_{}: {} / {oracle}", 2 * n, products[n]))?;
    }
    Ok("products = determinants = closed forms, sigma = 1,2,3,1/2, n <= 5; Catalan all ones n <= 6".into())
}

fn mg1_waiting() -> Outcome {
    let one = sigma(1, 1);
    let moments = ints(&[1, 2, 18, 252, 4776]);
    let mixing = ints(&[1, 2, 9, 42, 199]);
    let takacs = takacs_moments(&ServiceMoments::CatalanH1, &one, 4).map_err(|e| e.to_string())?;
    let rep2 = catalan_waiting_moments(&one, 4);
    let rep3 = catalan_mixing_recursion(&one, 4);
    let pk = pk_waiting_series(&ServiceMoments::CatalanH1, &one, 4).map_err(|e| e.to_string())?;
    ensure(takacs.moments() == moments.as_slice(), || format!("Takacs: {}", show(takacs.moments())))?;
    ensure(takacs.mixing() == mixing.as_slice(), || format!("Takacs mixing: {}", show(takacs.mixing())))?;
    ensure(rep2.moments() == moments.as_slice(), || format!("Catalan recursion: {}", show(rep2.moments())))?;
    ensure(rep3 == mixing, || format!("mixing recursion: {}", show(&rep3)))?;
    ensure(pk.coeffs() == mixing.as_slice(), || format!("PK series: {pk}"))?;

    for sg in [sigma(1, 1), sigma(2, 1), sigma(1, 2)] {
        let w = takacs_moments(&ServiceMoments::Exponential, &sg, 10).map_err(|e| e.to_string())?;
        let s = sg.value();
        for n in 1..=10 {
            let oracle = factorial(n) * s * (1..n).fold(int(1), |acc, _| acc * (int(1) + s));
            ensure(w.moments()[n] == oracle, || format!("exponential sigma={sg} n={n}: {}", w.moments()[n]))?;
        }
    }
    Ok("Catalan service four routes at sigma = 1; exponential closed form sigma = 1,2,1/2, n <= 10".into())
}

fn birth_death() -> Outcome {
    for sg in [sigma(1, 1), sigma(2, 1), sigma(3, 1), sigma(1, 2)] {
        let series = p00_series(&Mm1Rates::new(sg.clone()), 10).map_err(|e| e.to_string())?;
        for n in 0..=10 {
            let p = emptiness_coefficient_alternating(n, &sg);
            let expected = if n % 2 == 1 { -p } else { p };
            ensure(series.coeff(n) == &expected, || format!("sigma={sg} n={n}: {}", series.coeff(n)))?;
        }
    }
    Ok("(-1)^n p_n, sigma = 1,2,3,1/2, N = 10".into())
}

fn oeis_verification() -> Outcome {
    let store = SequenceStore::bundled();
    let gen = |tag, s| big(family_series(tag, &sigma(s, 1), 11).coeffs());
    let check = |candidate: &[BigInt], id: &str| store.verify(candidate, id, DEFAULT_MAX_SHIFT).unwrap();
    let exact = [
        (gen(FamilyTag::Busy, 1), "A155069"),
        (gen(FamilyTag::Busy, 2), "A103210"),
        (gen(FamilyTag::Busy, 3), "A103211"),
        (gen(FamilyTag::Emptiness, 1), "A001003"),
        (gen(FamilyTag::Emptiness, 2), "A107841"),
        (gen(FamilyTag::Emptiness, 3), "A131763"),
        (big(&catalan_oracle(12)), "A000108"),
    ];
    for (candidate, id) in &exact {
        let verdict = check(candidate, id);
        ensure(verdict.is_match(), || format!("{id}: {verdict}"))?;
    }
    let be = check(&gen(FamilyTag::BusyExcess, 1), "A006318");
    let busy = check(&gen(FamilyTag::Busy, 1), "A006318");
    ensure(be == Verdict::Match { shift: 0 }, || format!("b_e(1) vs A006318: {be}"))?;
    ensure(matches!(busy, Verdict::Match { shift } if shift.abs() == 1), || {
        format!("b(1) vs A006318: {busy}")
    })?;

    let moments = big(family_moments(FamilyTag::Busy, &sigma(1, 1), 11).values());
    let waiting = big(catalan_mixing_recursion(&sigma(1, 1), 11).as_slice());
    for (name, candidate) in [("n! b_n(1)", &moments), ("w_n(1)", &waiting)] {
        for record in store.iter() {
            let verdict = check(candidate, record.anumber());
            ensure(verdict == Verdict::NoMatch, || format!("{name} vs {}: {verdict}", record.anumber()))?;
        }
        ensure(store.search(candidate, 5).unwrap().is_empty(), || format!("{name} found by search"))?;
    }
    Ok(format!("8 identifications; b_e(1) ~ A006318 {be}, b(1) ~ A006318 {busy}; 2 negative controls"))
}

fn numeric_validation() -> Outcome {
    let mut failures = Vec::new();
    let h1 = DensitySpec::mixing_h1();
    for (n, c) in catalan_oracle(7).iter().enumerate() {
        let expected = c.to_integer().to_string().parse::<f64>().unwrap();
        let got = quad_moment(&h1, n as u32, 1e-10).map_err(|e| e.to_string())?;
        if ((got - expected) / expected).abs() > 1e-8 {
            failures.push(format!("h1 moment {n}: {got}"));
        }
    }
    let be = DensitySpec::mixing_be(1.0).unwrap();
    for (n, expected) in [1.0, 2.0, 6.0, 22.0, 90.0].into_iter().enumerate() {
        let got = quad_moment(&be, n as u32, 1e-10).map_err(|e| e.to_string())?;
        if ((got - expected) / expected).abs() > 1e-8 {
            failures.push(format!("b_e moment {n}: {got}"));
        }
    }
    let busy = DensitySpec::busy_pdf(0.5).unwrap();
    let mass = quad_weighted(&busy, |_| 1.0, 1e-10).map_err(|e| e.to_string())?.value;
    let mean = quad_moment(&busy, 1, 1e-10).map_err(|e| e.to_string())?;
    if (mass - 1.0).abs() > 1e-6 || (mean - 2.0).abs() > 1e-6 {
        failures.push(format!("busy pdf mass {mass}, mean {mean}"));
    }
    let mut egf_notes = Vec::new();
    for x in [0.0, 0.5, 1.0] {
        let closed = catalan_egf(x).map_err(|e| e.to_string())?;
        let partial = catalan_egf_partial_sum(x, 20);
        let gap = (closed - partial).abs();
        if gap > 1e-10 {
            failures.push(format!(
                "catalan_egf({x}) = {closed} vs 20-term sum {partial}, gap {gap:.2e} > 1e-10 \
                 (40-term sum gap {:.2e})",
                (closed - catalan_egf_partial_sum(x, 40)).abs()
            ));
        }
        egf_notes.push(format!("x={x}: {gap:.1e}"));
    }
    if failures.is_empty() {
        Ok(format!("quadrature moments and mass; EGF gaps {}", egf_notes.join(", ")))
    } else {
        Err(failures.join("; "))
    }
}

fn heavy_traffic() -> Outcome {
    let sigmas: Vec<SigmaParameter> = [10i64, 100, 1000, 10000].iter().map(|&s| sigma(s, 1)).collect();
    let catalan = catalan_oracle(7);
    let threshold = ratio(1, 1000);
    for n in 0..=6 {
        let gaps: Vec<Rational> = sigmas
            .iter()
            .map(|sg| {
                let ratio = excess_coefficient(n, sg) / sg.value().pow(n as i32);
                (ratio - &catalan[n]).abs()
            })
            .collect();
        let decreasing = gaps.windows(2).all(|w| w[1] < w[0] || (w[0].is_zero() && w[1].is_zero()));
        ensure(decreasing, || format!("n={n}: gaps {}", show(&gaps)))?;
        ensure(gaps[3] < &threshold * &catalan[n], || format!("n={n}: gap {} at 10^4", gaps[3]))?;
    }
    Ok("gaps decrease along 10..10^4 and fall below 1e-3 C_n, n <= 6 (n = 0 is identically 0)".into())
}

/// Recurrence with the misprinted factor `(2n-1)(1+sigma)`.
fn misprinted_busy_rec(order: usize, s: &Rational) -> Vec<Rational> {
    let mut b = vec![int(1), int(1)];
    for n in 1..order {
        let nn = int(n as i64);
        let next = ((int(2) * &nn - int(1)) * (int(1) + s) * &b[n] - (&nn - int(2)) * &b[n - 1]) / (&nn + int(1));
        b.push(next);
    }
    b.truncate(order + 1);
    b
}

/// Takacs recursion with the misprinted `binom(n, 2)` for every `k`.
fn misprinted_takacs(g: &[Rational], s: &Rational, order: usize) -> Vec<Rational> {
    let mut e = vec![int(1)];
    for n in 2..=order + 1 {
        let binom_n_2 = int((n * (n - 1) / 2) as i64);
        let sum = (2..=n).fold(int(0), |acc, k| acc + &binom_n_2 * &g[k] * &e[n - k]);
        e.push(s * sum / int(n as i64));
    }
    e
}

fn errata_regression() -> Outcome {
    let one = int(1);
    let misprinted = misprinted_busy_rec(2, &one);
    ensure(misprinted[2] == ratio(3, 2), || format!("misprinted b_2(1) = {}", misprinted[2]))?;
    ensure(busy_coefficient_rec(2, &sigma(1, 1))[2] == int(2), || "corrected b_2(1) != 2".into())?;

    let g: Vec<Rational> = catalan_oracle(6)
        .iter()
        .enumerate()
        .map(|(k, c)| factorial(k) * c)
        .collect();
    let printed = misprinted_takacs(&g, &one, 4);
    let correct = ints(&[1, 2, 18, 252, 4776]);
    ensure(printed != correct, || "misprinted Takacs form reproduces the moments".into())?;
    let first_bad = (0..correct.len()).find(|&n| printed[n] != correct[n]).unwrap();
    let corrected = takacs_moments(&ServiceMoments::CatalanH1, &sigma(1, 1), 4).unwrap();
    ensure(corrected.moments() == correct.as_slice(), || "corrected Takacs form fails".into())?;
    Ok(format!(
        "printed (1+sigma) factor gives b_2(1) = 3/2; printed binom(n,2) gives E[W^n(1)] = {} (first wrong at n = {first_bad}, {} vs {})",
        show(&printed),
        printed[first_bad],
        correct[first_bad]
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 13] = [
        (1, "busy-period sequences", busy_period_rows),
        (2, "moment sequences", moment_sequences),
        (3, "emptiness sequences", emptiness_sequences),
        (4, "operator identities", operator_identities),
        (5, "Catalan fixed point", catalan_fixed_point),
        (6, "continued fractions", continued_fractions),
        (7, "Hankel transforms", hankel_transforms),
        (8, "M/G/1 waiting moments", mg1_waiting),
        (9, "birth-death return series", birth_death),
        (10, "OEIS verification", oeis_verification),
        (11, "numeric validation", numeric_validation),
        (12, "heavy-traffic limit", heavy_traffic),
        (13, "errata regression", errata_regression),
    ];
    let mut failed = 0;
    for (id, title, run) in criteria {
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        match result {
            Ok(detail) => println!("[PASS] {id:>2} {title}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {id:>2} {title}: {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
