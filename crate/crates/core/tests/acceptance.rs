//! Acceptance suite. Runs without the libtest harness so every criterion
//! prints exactly one PASS/FAIL line regardless of capture settings.

use std::time::{Duration, Instant};

use rand::SeedableRng;

use qjfrac::arith::{qr, QRatFn, Rational};
use qjfrac::convergence::{numeric_convergence_probe, pringsheim_margins, threshold_radius, BReading, HpComplex};
use qjfrac::divisor::{
    approximant_mod_p, congruence_table, expand_mod_p, sigma_gf, sigma_special_case_check, tilde_d0j, DivisorGFRequest,
};
use qjfrac::jfraction::{
    compare_lambda_closed_form, convergent_coefficients, convergent_table, convergents, determinant_residual, convergent_sum_decomposition, decompose_terms,
    lambert_power_target, pochhammer_spec, random_pochhammer_params, random_terms, series_to_jfraction,
    PochhammerParams, Terms,
};
use qjfrac::oracles::{divisor_count, pochhammer_ratio, q_binomial_theorem_check, q_pochhammer, sigma_alpha};
use qjfrac::report::{ReportSet, Status};
use qjfrac::stirling::{
    first_column_formula_check, nested_difference_check, newton_girard_check, verify_claim_relations, verify_lemmas,
    verify_pq_coefficient_relation,
};

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome { pass, detail: detail.into() }
    }
}

fn rng(seed: u64) -> rand::rngs::StdRng {
    rand::rngs::StdRng::seed_from_u64(seed)
}

fn int_coeff(r: &Rational) -> Option<i64> {
    r.is_integer().then(|| r.to_integer().try_into().ok()).flatten()
}

fn c1_pochhammer_window() -> Outcome {
    let start = Instant::now();
    let mut first_bad = Vec::new();
    let mut ok = true;
    for seed in 0..8u64 {
        let p = random_pochhammer_params(&mut rng(1000 + seed));
        for h in 2..=5 {
            let pair = convergents(&pochhammer_spec(&p).unwrap(), h).unwrap();
            let j = convergent_coefficients(&pair, 2 * h + 1);
            let matches = |n: usize| j.coeffs()[n] == pochhammer_ratio(&p.a, &p.b, n).unwrap();
            ok &= (0..h).all(matches);
            first_bad.push((0..=2 * h).find(|&n| !matches(n)));
        }
    }
    let doubled = first_bad.iter().zip((0..8).flat_map(|_| 2..=5usize)).all(|(b, h)| b.map_or(true, |n| n >= 2 * h));
    let elapsed = start.elapsed();
    let within = elapsed < Duration::from_secs(60);
    let hs = (0..8).flat_map(|_| 2..=5usize);
    let at_2h = first_bad.iter().zip(hs.clone()).filter(|(b, h)| **b == Some(2 * h)).count();
    let beyond = first_bad.iter().filter(|b| b.is_none()).count();
    Outcome::new(
        ok && within,
        format!(
            "n<h exact for 8 random (a,b) x h=2..5; n<2h exact: {doubled}; first mismatch at n=2h in {at_2h}/32, none through n=2h in {beyond}; {:.2?}",
            elapsed
        ),
    )
}

/// The printed `ab_3` for `1/(1-q^n)` has `(1+q+q^2)` where inversion
/// gives `(1+q+q^2)^2`. Forward expansion decides between them: the line
/// fails on that value and the suite checks that the printed one does not
/// reproduce the target while the inverted one does.
fn c2_inversion_golden() -> (Outcome, bool) {
    let golden = [
        (
            0u32,
            [
                "1/(1-q)",
                "(1+q+4*q^2)/(2*(q^3-1))",
                "(1+5*q+14*q^2+26*q^3+34*q^4+25*q^5+9*q^6)/(2*(1+q+q^2)*(1+2*q+3*q^2)*(1+q+q^2+q^3+q^4))",
                "-2*q/((1-q)^2*(1+q))",
                "-(1-q)*(1+2*q+3*q^2)/(4*(1+q)*(1+q^2)*(1+q+q^2))",
            ],
        ),
        (
            1,
            [
                "1/(1-q)",
                "q*(-1-q+8*q^2)/((1-q)*(1-3*q)*(1+q+q^2))",
                "-(1-5*q^2-16*q^3-16*q^4+40*q^5+136*q^6+144*q^7+67*q^8+8*q^9+q^10)/((1-3*q)*(1+q+q^2)*(1+q+q^2+q^3+q^4)*(-1+4*q^2+8*q^3+q^4))",
                "(1-3*q)/((1-q)^2*(1+q))",
                "(1-q)^3*(-1+4*q^2+8*q^3+q^4)/((1+q)*(1-3*q)^2*(1+q^2)*(1+q+q^2)^2)",
            ],
        ),
    ];
    let mut matched = 0;
    let mut misses = Vec::new();
    let mut shape = true;
    for (alpha, vals) in golden {
        let target = lambert_power_target(alpha, 6);
        let inv = series_to_jfraction(&target, 3).unwrap();
        let t = &inv.terms;
        let got = [t.c(1), t.c(2), t.c(3), t.ab(2), t.ab(3)];
        let names = ["c_1", "c_2", "c_3", "ab_2", "ab_3"];
        for ((g, v), name) in got.iter().zip(vals).zip(names) {
            if **g == qr(v) {
                matched += 1;
            } else {
                misses.push(format!("alpha={alpha} {name}: printed/inverted = {}", qr(v).checked_div(g).unwrap().factored()));
            }
        }
        let expand = |ab3: &QRatFn| {
            let terms = Terms::new(t.c_all().to_vec(), vec![t.ab(2).clone(), ab3.clone()]).unwrap();
            convergent_coefficients(&convergent_table(&terms, 3).unwrap()[3], 6) == target.truncate(6)
        };
        shape &= expand(t.ab(3));
        if qr(vals[4]) != *t.ab(3) {
            shape &= alpha == 0 && !expand(&qr(vals[4])) && qr(vals[4]).checked_div(t.ab(3)).unwrap() == qr("1+q+q^2");
        }
    }
    shape &= matched == 9;
    let detail = format!("{matched}/10 golden values for 1/(1-q^n) and n/(1-q^n); {}", misses.join("; "));
    (Outcome::new(matched == 10, detail), shape)
}

const D_PRINTED: [(&str, usize); 3] = [
    ("(1+4*q+8*q^2+11*q^3+10*q^4)/(1+2*q+2*q^2-2*q^4)", 4),
    ("(-1-5*q-14*q^2-29*q^3-46*q^4-62*q^5-71*q^6)/(-1-3*q-6*q^2-8*q^3-7*q^4-4*q^5+q^6)", 6),
    (
        "(1+6*q+20*q^2+50*q^3+101*q^4+175*q^5+267*q^6+369*q^7+472*q^8)/(1+4*q+10*q^2+19*q^3+29*q^4+37*q^5+40*q^6+38*q^7+32*q^8)",
        7,
    ),
];

const SIGMA_PRINTED: [(&str, usize); 4] = [
    ("q*(1+3*q+3*q^2)/((1-q)*(1+q))", 3),
    ("q*(1+7*q+25*q^2+62*q^3+115*q^4)/((1+q+3*q^2)*(1+3*q+3*q^2))", 5),
    ("q*(1+9*q+44*q^2+155*q^3+430*q^4+998*q^5+2000*q^6)/(1+6*q+22*q^2+58*q^3+120*q^4+204*q^5+290*q^6+350*q^7)", 7),
    (
        "q*(1+11*q+65*q^2+276*q^3+935*q^4+2676*q^5+6696*q^6+14998*q^7+30592*q^8)/(1+8*q+37*q^2+126*q^3+347*q^4+812*q^5+1664*q^6+3050*q^7+5079*q^8+7776*q^9)",
        9,
    ),
];

fn c3_printed_approximants() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    // The divisor displays carry d(n+1) at q^n (constant term d(1) = 1).
    for (src, top) in D_PRINTED {
        let printed = qr(src).taylor(top + 1).unwrap();
        let h = (top + 3) / 2;
        let ours = sigma_gf(&DivisorGFRequest::new(0, h, top + 2)).unwrap();
        let good = (0..=top).all(|n| {
            printed.coeffs()[n] == ours.coeffs()[n + 1]
                && int_coeff(&printed.coeffs()[n]) == Some(divisor_count(n as u64 + 1) as i64)
        });
        notes.push(format!("d q^{top} h={h}:{}", if good { "ok" } else { "bad" }));
        ok &= good;
    }
    for (src, top) in SIGMA_PRINTED {
        let printed = qr(src).taylor(top + 1).unwrap();
        let h = (top + 1) / 2;
        let ours = sigma_gf(&DivisorGFRequest::new(1, h, top + 1)).unwrap();
        let good = (1..=top).all(|n| {
            printed.coeffs()[n] == ours.coeffs()[n]
                && printed.coeffs()[n] == Rational::from_integer(sigma_alpha(1, n as u64))
        });
        notes.push(format!("sigma q^{top} h={h}:{}", if good { "ok" } else { "bad" }));
        ok &= good;
    }
    Outcome::new(ok, notes.join(", "))
}

fn c4_mod5_tables() -> Outcome {
    let printed: [(&[u64], &[u64], usize, usize); 2] = [
        (&[0, 1, 4, 4, 0, 0, 3], &[1, 1, 2, 3, 0, 4], 4, 7),
        (&[0, 1, 1, 0, 1, 0, 1, 1, 3, 2], &[1, 3, 2, 1, 2, 2, 4, 0, 4, 1], 5, 9),
    ];
    let mut ok = true;
    let mut notes = Vec::new();
    for (num, den, h, top) in printed {
        let from_display = expand_mod_p(num, den, 5, top + 1).unwrap();
        let brute: Vec<u64> = (1..=top).map(|n| (sigma_alpha(1, n as u64) % 5u32).try_into().unwrap()).collect();
        let req = DivisorGFRequest::new(1, h, top + 1).with_modulus(5);
        let table: Vec<u64> = congruence_table(&req).unwrap().rows.iter().map(|r| r.residue.unwrap()).collect();
        let (an, ad) = approximant_mod_p(&req).unwrap().unwrap();
        let reduced = expand_mod_p(&an, &ad, 5, top + 1).unwrap();
        let good = from_display[1..] == brute[..] && table == brute && reduced[1..] == brute[..];
        notes.push(format!("h={h} through q^{top}: {:?}", brute));
        ok &= good;
    }
    Outcome::new(ok, notes.join("; "))
}

fn c5_lemma_suite() -> Outcome {
    let start = Instant::now();
    let spec = pochhammer_spec(&PochhammerParams::divisor()).unwrap();
    let terms = spec.terms(7).unwrap();
    let mut failures = 0;
    let mut checks = 0;
    for h in 1..=6 {
        let set = verify_lemmas(&terms, h).unwrap();
        checks += set.reports.len();
        failures += set.reports.iter().filter(|r| r.status.is_failure()).count();
        let rel = verify_pq_coefficient_relation(h).unwrap();
        checks += rel.len();
        failures += rel.iter().filter(|r| r.status.is_failure()).count();
    }
    for seed in 0..20u64 {
        let t = random_terms(&mut rng(2000 + seed), 7);
        for h in 1..=6 {
            let set = verify_lemmas(&t, h).unwrap();
            checks += set.reports.len();
            failures += set.reports.iter().filter(|r| r.status.is_failure()).count();
        }
    }
    let elapsed = start.elapsed();
    Outcome::new(
        failures == 0 && elapsed < Duration::from_secs(300),
        format!("{checks} reports, {failures} asserted failures; {:.2?}", elapsed),
    )
}

fn c6_telescoping() -> Outcome {
    let spec = pochhammer_spec(&PochhammerParams::divisor()).unwrap();
    let mut ok = true;
    let terms = spec.terms(8).unwrap();
    let table = convergent_table(&terms, 8).unwrap();
    ok &= (1..=8).all(|i| determinant_residual(&table, &terms, i).is_zero());
    // The cleared summed form grows quickly for this spec; h = 7 alone takes minutes.
    for h in 1..=6 {
        ok &= convergent_sum_decomposition(&spec, h).unwrap().holds();
    }
    for h in 1..=8 {
        ok &= decompose_terms(&random_terms(&mut rng(3000 + h as u64), h), h).unwrap().holds();
    }
    // In the product form of lambda_h the numerator carries
    // (b/q;q)(a;q)(b/a;q)(q;q), each (q;q)_(h-1) at (a, b) = (q, q^2).
    let p = PochhammerParams::divisor();
    let mut divisible = true;
    let mut reduced_monomial = true;
    for h in 2..=8 {
        let n = h - 1;
        let factors = [&p.b * &qr("1/q"), p.a.clone(), p.b.checked_div(&p.a).unwrap(), QRatFn::q()];
        let product: QRatFn = factors.iter().map(|x| q_pochhammer(x, n)).product();
        let fourth = q_pochhammer(&QRatFn::q(), n).powi(4).unwrap();
        let (_, rem) = product.num().divmod(fourth.num()).unwrap();
        divisible &= rem.is_zero() && product.den().is_one();
        ok &= compare_lambda_closed_form(&p, h).unwrap().matches_expected_factor;
        let lambda = terms.lambda(h);
        reduced_monomial &= lambda.num().valuation() == Some(n * n) && lambda.num().degree() == Some(n * n);
    }
    Outcome::new(
        ok && divisible,
        format!("(q,q^2): telescoping h<=8, summed form h<=6; random specs: both h<=8; (q;q)_(h-1)^4 divides the product-form numerator h<=8: {divisible}; reduced numerator q^((h-1)^2): {reduced_monomial}"),
    )
}

/// The plain Pringsheim margin `|b_h| - |a_h| - 1` goes negative for every
/// `0 < |q| <= 0.2` (for all `h` when `q > 0`), so that sub-check is expected to fail. The line still
/// reports it, and the suite checks the failure has exactly this shape.
fn c7_convergence() -> (Outcome, bool) {
    let radius = threshold_radius(1e-9).unwrap();
    let radius_ok = (radius - 0.206783).abs() < 1e-5;
    let mut plain_positive = true;
    let mut plain_negative = true;
    let mut scaled = true;
    let mut reduced = true;
    let mut r = rng(4000);
    for _ in 0..10 {
        let (re, im) = loop {
            let re: f64 = rand::Rng::gen_range(&mut r, -0.2..0.2);
            let im: f64 = rand::Rng::gen_range(&mut r, -0.2..0.2);
            let m = (re * re + im * im).sqrt();
            if m <= 0.2 && m > 1e-3 {
                break (re, im);
            }
        };
        let q = HpComplex::from_f64(re, im, 128);
        let rep = pringsheim_margins(&q, 100, BReading::Displayed).unwrap();
        plain_positive &= rep.all_margins_positive();
        plain_negative &= rep.rows.iter().any(|row| row.resolved && row.margin < 0.0);
        scaled &= rep.all_scaled_margins_positive();
        reduced &= rep.all_reduced_margins_positive();
    }
    let probe = numeric_convergence_probe(&HpComplex::from_f64(0.15, 0.0, 128), &HpComplex::from_f64(0.15, 0.0, 128), 20)
        .unwrap();
    let gap = probe.gap_at(20).unwrap_or(f64::INFINITY);
    let probe_ok = gap < 1e-10;
    let pass = radius_ok && plain_positive && probe_ok;
    let expected_shape = radius_ok && probe_ok && scaled && reduced && plain_negative;
    (
        Outcome::new(
            pass,
            format!(
                "radius {radius:.7} (ok: {radius_ok}); plain margins positive: {plain_positive} (a resolved negative margin at every q: {plain_negative}); \
                 scaled margins positive: {scaled}; reduced margins positive: {reduced}; probe gap at h=20: {gap:.3e}"
            ),
        ),
        expected_shape,
    )
}

fn c8_sigma_alpha() -> Outcome {
    let h = 6;
    let mut ok = true;
    for alpha in 1..=3 {
        let s = sigma_gf(&DivisorGFRequest::new(alpha, h, h)).unwrap();
        ok &= (1..h).all(|n| s.coeffs()[n] == Rational::from_integer(sigma_alpha(alpha, n as u64)));
    }
    let special = sigma_special_case_check(2, h).unwrap();
    let asserted: Vec<_> = special.iter().filter(|r| r.status == Status::Pass || r.status == Status::Fail).collect();
    let zero_residual = !asserted.is_empty() && asserted.iter().all(|r| r.status == Status::Pass);
    Outcome::new(
        ok && zero_residual,
        format!("sigma_1..3 coefficients 1..5 at h=6: {ok}; alpha=2 explicit form residual zero for n<6: {zero_residual}"),
    )
}

fn c9_q_binomial() -> Outcome {
    let cases = [("0", "q"), ("q", "q"), ("q^2", "q")];
    let ok = cases.iter().all(|(a, z)| q_binomial_theorem_check(&qr(a), &qr(z), 13).unwrap());
    Outcome::new(ok, "(a,z) in {(0,q),(q,q),(q^2,q)} through q^12")
}

fn well_formed(set: &ReportSet) -> bool {
    let v: serde_json::Value = match serde_json::from_str(&set.to_json()) {
        Ok(v) => v,
        Err(_) => return false,
    };
    let Some(reports) = v["reports"].as_array() else { return false };
    v["schema"] == 1
        && !reports.is_empty()
        && reports.iter().all(|r| {
            r["lemma"].is_string()
                && r["h"].is_u64()
                && r["residual"].is_string()
                && matches!(r["status"].as_str(), Some("pass" | "fail" | "zero" | "nonzero"))
        })
}

fn c10_conjecture_reports() -> Outcome {
    let spec = pochhammer_spec(&PochhammerParams::divisor()).unwrap();
    let terms = spec.terms(6).unwrap();
    let mut sets = Vec::new();
    let claims: Vec<_> = (1..=4).flat_map(|k| verify_claim_relations(&terms, 4, k)).collect();
    sets.push(("claim", ReportSet::new(claims)));
    sets.push(("nested_difference", ReportSet::new(vec![nested_difference_check(&terms, 4, 1, 3)])));
    let ng: Vec<_> = (0..=4).flat_map(|k| newton_girard_check(terms.c_all(), 4, k)).collect();
    sets.push(("newton_girard", ReportSet::new(ng)));
    let fc: Vec<_> = (1..=5).flat_map(|h| first_column_formula_check(h).unwrap()).collect();
    sets.push(("first_column", ReportSet::new(fc)));
    let td: Vec<_> = (1..=2).flat_map(|j| tilde_d0j(j).unwrap().reports).collect();
    sets.push(("tilde_d", ReportSet::new(td)));
    let bad: Vec<&str> = sets.iter().filter(|(_, s)| !well_formed(s) || s.any_failure()).map(|(n, _)| *n).collect();
    let count: usize = sets.iter().map(|(_, s)| s.reports.len()).sum();
    Outcome::new(bad.is_empty(), format!("{count} reports across {} checkers; malformed or failing: {:?}", sets.len(), bad))
}

enum Check {
    Plain(fn() -> Outcome),
    /// Literal reading unattainable; the flag says the failure has the analyzed shape.
    Known(fn() -> (Outcome, bool), &'static str),
}

fn main() {
    let checks = [
        (1, "pochhammer coefficients", Check::Plain(c1_pochhammer_window)),
        (
            2,
            "inversion golden values",
            Check::Known(c2_inversion_golden, "printed ab_3 for 1/(1-q^n) lacks a square on (1+q+q^2); its expansion misses the target at z^4"),
        ),
        (3, "printed approximants", Check::Plain(c3_printed_approximants)),
        (4, "mod-5 tables", Check::Plain(c4_mod5_tables)),
        (5, "lemma suite", Check::Plain(c5_lemma_suite)),
        (6, "telescoping", Check::Plain(c6_telescoping)),
        (
            7,
            "convergence",
            Check::Known(c7_convergence, "plain margins |b_h|-|a_h|-1 go negative at every sampled q (all h for real q>0); the remaining sub-checks hold"),
        ),
        (8, "sigma_alpha generators", Check::Plain(c8_sigma_alpha)),
        (9, "q-binomial theorem", Check::Plain(c9_q_binomial)),
        (10, "conjecture reports", Check::Plain(c10_conjecture_reports)),
    ];
    let mut unexpected = Vec::new();
    for (id, name, check) in checks {
        let (o, known) = match check {
            Check::Plain(f) => (f(), None),
            Check::Known(f, why) => {
                let (o, shape) = f();
                (o, shape.then_some(why))
            }
        };
        println!("[{}] {id:>2} {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        match (o.pass, known) {
            (true, _) => {}
            (false, Some(why)) => println!("        known: {why}"),
            (false, None) => unexpected.push(id),
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
