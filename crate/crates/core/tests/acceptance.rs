//! One line per acceptance criterion. Exits nonzero if any criterion fails.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use fixgroup_core::expr::{parse_element, parse_ratfun, parse_unit, parse_unit_list};
use fixgroup_core::moebius::DEFAULT_CLOSURE_CAP;
use fixgroup_core::{
    brute_force_fixing_group, fixed_field_generator, fixing_group, fixing_report, fractional_unit_solve,
    symmetric_functions, Field, FixingOptions, KleinType, MoebiusUnit, RatFun, UnitGroup,
};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond { Ok(()) } else { Err(msg.into()) }
}

fn units(src: &str, field: &Field) -> Vec<MoebiusUnit> {
    parse_unit_list(src, field).unwrap()
}

fn same_set(g: &UnitGroup, expected: &[MoebiusUnit]) -> bool {
    g.order() == expected.len() && expected.iter().all(|u| g.contains(u))
}

fn within(start: Instant, limit: Duration) -> Result<String, String> {
    let spent = start.elapsed();
    ensure(spent < limit, format!("took {spent:?}, limit {limit:?}"))?;
    Ok(format!("{spent:.2?}"))
}

fn golden_over_q() -> Outcome {
    let start = Instant::now();
    let q = Field::rationals();
    let f = parse_ratfun("(x^3-3*x+1)^2/(x*(x^3-x^2-2*x+1)*(x-1))", &q).unwrap();

    let report = fixing_report(&f, FixingOptions::default()).map_err(|e| e.to_string())?;
    let group = &report.trace.group;
    ensure(same_set(group, &units("x; 1/(1-x); (x-1)/x", &q)), format!("G_f = {group:?}"))?;

    let u = parse_ratfun("1/(x-9/2)", &q).unwrap();
    let v = parse_ratfun("1/x-1", &q).unwrap();
    let fprime = u.compose(&f).unwrap().compose(&v).unwrap();
    let expected = parse_ratfun(
        "(-4*x^6-6*x^5+32*x^4-34*x^3+14*x^2-2*x)/(27*x^5-108*x^4+141*x^3-81*x^2+21*x-2)",
        &q,
    )
    .unwrap();
    ensure(fprime == expected, format!("f' = {fprime}"))?;

    let mut solutions = Vec::new();
    for beta in fprime.num().roots().unwrap() {
        for gamma in fprime.den().roots().unwrap() {
            let sol = fractional_unit_solve(&fprime, &beta, &gamma).map_err(|e| e.to_string())?;
            for c in sol.c_values {
                solutions.push((beta.to_string(), gamma.to_string(), c.to_string()));
            }
        }
    }
    solutions.sort();
    let want = vec![
        ("1".to_string(), "2/3".to_string(), "-3".to_string()),
        ("1/2".to_string(), "1/3".to_string(), "-3/2".to_string()),
    ];
    ensure(solutions == want, format!("step D solutions {solutions:?}"))?;

    let h = parse_ratfun("(x^3-3*x+1)/((x-1)*x)", &q).unwrap();
    let generator = report.generator.as_ref().ok_or("no generator")?;
    ensure(generator.same_field(&h), format!("generator {generator}"))?;
    let g = f.left_factor(&h).ok_or("no left factor for h")?;
    ensure(g == parse_ratfun("x^2/(x-1)", &q).unwrap(), format!("left factor {g}"))?;
    let emitted = report.left_factor.as_ref().ok_or("no emitted left factor")?;
    ensure(emitted.compose(generator).unwrap() == f, "emitted factors do not compose to f")?;
    within(start, Duration::from_secs(5))
}

fn golden_over_f2() -> Outcome {
    let start = Instant::now();
    let f2 = Field::prime(2).unwrap();
    let f = parse_ratfun("(x^2+1)*(x^6+x^4+x^3+x^2+1)/(x^8+x^5+x^4+x^3+1)", &f2).unwrap();
    let report = fixing_report(&f, FixingOptions::default()).map_err(|e| e.to_string())?;
    ensure(same_set(&report.trace.group, &units("x; 1/x", &f2)), "G_f differs from {x, 1/x}")?;
    let generator = report.generator.as_ref().ok_or("no generator")?;
    let h = parse_ratfun("x+1/x", &f2).unwrap();
    ensure(generator.same_field(&h), format!("generator {generator}"))?;
    let g = f.left_factor(&h).ok_or("no left factor")?;
    ensure(g == parse_ratfun("(x^4+x)/(x^4+x+1)", &f2).unwrap(), format!("left factor {g}"))?;
    within(start, Duration::from_secs(1))
}

fn tetrahedral_expansion() -> Outcome {
    let start = Instant::now();
    let qi = Field::gaussian_rationals();
    let elements = units(
        "(x-i)/(x+i); -(x-i)/(x+i); (x+i)/(x-i); -(x+i)/(x-i); 1/x; -1/x; x; -x; \
         i*(x-1)/(x+1); -i*(x-1)/(x+1); i*(x+1)/(x-1); -i*(x+1)/(x-1)",
        &qi,
    );
    let group = UnitGroup::new(&qi, elements).map_err(|e| e.to_string())?;
    ensure(group.classify() == KleinType::Tetrahedral, format!("classified as {}", group.classify()))?;
    let sigma = symmetric_functions(&group).map_err(|e| e.to_string())?;
    let t = |s: &str| parse_ratfun(&s.replace('t', "x"), &qi).unwrap();
    let zero = RatFun::constant(qi.zero());
    let s2 = t("(-1+33*t^4+33*t^8-t^12)/(t^10-2*t^6+t^2)");
    let s4 = t("(-33*t^4-66*t^2-33)/(t^4+2*t^2+1)");
    let s6 = t("(2-66*t^4-66*t^8+2*t^12)/(t^2-2*t^6+t^10)");
    let expected = [
        &zero, &s2, &zero, &s4, &zero, &s6, &zero, &s4, &zero, &s2, &zero, &RatFun::constant(qi.one()),
    ];
    for (k, (got, want)) in sigma.iter().zip(expected).enumerate() {
        ensure(got == want, format!("sigma_{} = {got}, expected {want}", k + 1))?;
    }
    ensure(fixed_field_generator(&group).unwrap() == s2, "generator is not sigma_2")?;
    within(start, Duration::from_secs(10))
}

fn spot_examples() -> Outcome {
    let q = Field::rationals();
    let qi = Field::gaussian_rationals();
    let cases = [
        ("x^2*(x-1)^2", &q, "x; 1-x"),
        ("x^4", &q, "x; -x"),
        ("x^4", &qi, "x; -x; i*x; -i*x"),
        ("x^9", &q, "x"),
    ];
    for (src, field, want) in cases {
        let g = fixing_group(&parse_ratfun(src, field).unwrap()).map_err(|e| e.to_string())?;
        ensure(same_set(&g, &units(want, field)), format!("{src} over {field}: order {}", g.order()))?;
    }
    Ok(format!("{} cases", cases.len()))
}

fn finite_unit_groups() -> Outcome {
    let start = Instant::now();
    for field in [Field::prime(2).unwrap(), Field::prime(3).unwrap(), Field::galois(2, 2).unwrap()] {
        let q = field.size().unwrap() as usize;
        let affine = UnitGroup::enumerate(&field, true).map_err(|e| e.to_string())?;
        ensure(affine.order() == q * q - q, format!("|affine group| = {} over {field}", affine.order()))?;
        let full = UnitGroup::enumerate(&field, false).map_err(|e| e.to_string())?;
        ensure(full.order() == q * q * q - q, format!("|full group| = {} over {field}", full.order()))?;

        let (f0, g_full) = fixgroup_core::finite_field_canonical_generators(&field).map_err(|e| e.to_string())?;
        let h0 = fixed_field_generator(&affine).map_err(|e| e.to_string())?;
        ensure(h0.same_field(&f0), format!("affine generator {h0} over {field}"))?;
        let h = fixed_field_generator(&full).map_err(|e| e.to_string())?;
        ensure(h.same_field(&g_full), format!("full generator {h} over {field}"))?;
    }
    within(start, Duration::from_secs(60))
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut rng = common::rng(6);
    let mut nontrivial = 0;
    let mut total = 0;
    for p in [2, 3, 5, 7] {
        let field = Field::prime(p).unwrap();
        for k in 0..200 {
            // Every other instance is built with a nontrivial group.
            let f = if k % 2 == 0 {
                common::ratfun(&field, 2, 8, &mut rng)
            } else {
                common::symmetric_instance(&field, 8, &mut rng)
            };
            let fast = fixing_group(&f).map_err(|e| format!("{f} over {field}: {e}"))?;
            let slow = brute_force_fixing_group(&f).map_err(|e| e.to_string())?;
            ensure(fast == slow, format!("{f} over {field}: {} vs {}", fast.order(), slow.order()))?;
            ensure(f.degree() % fast.order() == 0, format!("{f}: order does not divide degree"))?;
            nontrivial += usize::from(fast.order() > 1);
            total += 1;
        }
    }
    let time = within(start, Duration::from_secs(300))?;
    Ok(format!("{total} instances, {nontrivial} nontrivial, {time}"))
}

fn conjugation_covariance() -> Outcome {
    let start = Instant::now();
    let mut rng = common::rng(7);
    let q = Field::rationals();
    for k in 0..100 {
        let f = if k % 2 == 0 { common::ratfun(&q, 1, 6, &mut rng) } else { common::symmetric_instance(&q, 6, &mut rng) };
        let u = common::unit(&q, &mut rng);
        let v = common::unit(&q, &mut rng);
        let fprime = u.to_ratfun().compose(&f).unwrap().compose(&v.to_ratfun()).unwrap();
        let g = fixing_group(&f).map_err(|e| format!("{f}: {e}"))?;
        let gp = fixing_group(&fprime).map_err(|e| format!("{fprime}: {e}"))?;
        ensure(g == gp.conjugate(&v), format!("conjugation law fails for {f}"))?;
    }
    let qi = Field::gaussian_rationals();
    for _ in 0..50 {
        let h = common::finite_group(&qi, &mut rng, 60);
        let alpha = common::unit(&qi, &mut rng);
        let moved = fixed_field_generator(&h.conjugate(&alpha)).map_err(|e| e.to_string())?;
        let expected = fixed_field_generator(&h).unwrap().compose(&alpha.inverse().to_ratfun()).unwrap();
        ensure(moved.same_field(&expected), format!("covariance fails for a group of order {}", h.order()))?;
    }
    Ok(format!("100 conjugation cases, 50 groups, {:.2?}", start.elapsed()))
}

fn structural_invariants() -> Outcome {
    let start = Instant::now();
    let mut rng = common::rng(8);
    let fields = [
        Field::rationals(),
        Field::gaussian_rationals(),
        Field::prime(5).unwrap(),
        Field::galois(3, 2).unwrap(),
    ];
    for k in 0..500 {
        let field = &fields[k % fields.len()];
        let g = common::ratfun(field, 1, 4, &mut rng);
        let h = common::ratfun(field, 1, 4, &mut rng);
        let gh = g.compose(&h).unwrap();
        ensure(gh.degree() == g.degree() * h.degree(), format!("deg({g} o {h}) over {field}"))?;
        ensure(gh.left_factor(&h).as_ref() == Some(&g), format!("left factor of {gh} by {h}"))?;
        let f = common::ratfun(field, 0, 6, &mut rng);
        let reparsed = parse_ratfun(&f.to_string(), field).map_err(|e| format!("{f}: {e}"))?;
        ensure(reparsed == f, format!("round trip of {f} over {field}"))?;
        let c = common::element(field, &mut rng);
        ensure(parse_element(&c.to_string(), field).unwrap() == c, format!("round trip of {c}"))?;
        let u = common::unit(field, &mut rng);
        ensure(parse_unit(&u.to_string(), field).unwrap() == u, format!("round trip of {u}"))?;
        let group = common::finite_group(field, &mut rng, DEFAULT_CLOSURE_CAP);
        UnitGroup::new(field, group.elements().to_vec()).map_err(|e| format!("closure is not a group: {e}"))?;
    }
    Ok(format!("500 instances of each invariant, {:.2?}", start.elapsed()))
}

fn main() {
    panic::set_hook(Box::new(|_| {}));
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("worked example over Q", golden_over_q),
        ("worked example over GF(2)", golden_over_f2),
        ("tetrahedral symmetric functions over Qi", tetrahedral_expansion),
        ("fixing group spot examples", spot_examples),
        ("finite unit groups and canonical generators", finite_unit_groups),
        ("agreement with brute force over GF(2,3,5,7)", oracle_equivalence),
        ("conjugation and covariance", conjugation_covariance),
        ("structural invariants", structural_invariants),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {name} ({detail})", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {why}", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
