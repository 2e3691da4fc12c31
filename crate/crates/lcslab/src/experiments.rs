//! Reproductions of the published numbers and structural statements, one
//! function per numbered experiment.

use lcslab_core::freelie::{merge_runs, psi_ranks, PsiOptions};
use lcslab_core::fsforms::{check_fs_parts, DifferentialForm};
use lcslab_core::identities::jacobi_sum;
use lcslab_core::lcs::{polylinear_identities, vanishing_report};
use lcslab_core::series::{c_series, positivity_threshold, quotient_hilbert, witt, TruncSeries};
use lcslab_core::{
    Error, Field, FieldSpec, Fp, FreeAlgebra, FreePolynomial, GradedQuotient, Lcs, Presentation, QuotientAlgebra, Rationals, Subspace,
};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::cli::{ExperimentArgs, GlobalArgs};
use crate::commands::{bigs_json, field_label, identity_checks, known_psi, psi_runs, stable_rows_json, with_field, CmdError, PsiSource};
use crate::report::{Check, Report};

pub const TITLES: [&str; 14] = [
    "Witt numbers of the free Lie algebra on two generators",
    "dimensions of [A, A] for a generic cubic relation",
    "ranks of ψ for a generic cubic relation",
    "ranks of ψ for relations of degrees 3 and 8",
    "Hilbert series of the generic cubic quotient",
    "B2 of the generic cubic quotient",
    "even differential forms under the star product",
    "L2 ∩ M3 = L3 in free algebras",
    "product inclusions and generation of B_m",
    "characteristic dependence of [x[y,z,u],v] ∈ L4",
    "exact polynomial identities",
    "positivity threshold",
    "vanishing bounds for the generic cubic quotient",
    "property samples",
];

struct Ctx {
    p1: u32,
    p2: u32,
    seed: u64,
    extended: bool,
}

pub fn run(g: &GlobalArgs, a: &ExperimentArgs, rep: &mut Report) -> Result<(), CmdError> {
    let ids = a.only.clone().unwrap_or_else(|| (1..=TITLES.len()).collect());
    if let Some(bad) = ids.iter().find(|&&i| i == 0 || i > TITLES.len()) {
        return Err(CmdError::Usage(format!("no experiment {bad}; choose 1..={}", TITLES.len())));
    }
    for p in [g.prime(), g.second_prime()] {
        FieldSpec::Prime(p).validate(false).map_err(|e| CmdError::Usage(e.to_string()))?;
    }
    let ctx = Ctx { p1: g.prime(), p2: g.second_prime(), seed: g.seed(), extended: a.extended };
    for id in ids {
        if id == 3 || id == 4 {
            rep.tag("conjectural (modular)");
        }
        let mut checks = Vec::new();
        let value = match id {
            1 => witt_numbers(&mut checks),
            2 => commutator_dims(&ctx, &mut checks)?,
            3 => psi_cubic(&ctx, &mut checks)?,
            4 => psi_two_relations(&ctx, &mut checks)?,
            5 => cubic_hilbert(&ctx, &mut checks)?,
            6 => cubic_b2(&ctx, &mut checks)?,
            7 => star_forms(&mut checks)?,
            8 => l2_cap_m3(&mut checks)?,
            9 => inclusions(&ctx, &mut checks)?,
            10 => polylinear(&mut checks)?,
            11 => identities(&mut checks)?,
            12 => positivity(&mut checks)?,
            13 => vanishing(&ctx, &mut checks)?,
            _ => samples(&ctx, &mut checks)?,
        };
        rep.set(&id.to_string(), json!({"title": TITLES[id - 1], "values": value}));
        for mut c in checks {
            c.name = format!("{id}. {}", c.name);
            rep.check(c);
        }
    }
    Ok(())
}

fn cubic(f: Fp, seed: u64, max_degree: usize) -> Result<GradedQuotient<Fp>, CmdError> {
    let (pres, _) = Presentation::random(f, 2, &[3], seed)?;
    Ok(GradedQuotient::build(pres, max_degree)?)
}

fn witt_numbers(checks: &mut Vec<Check>) -> Value {
    let v: Vec<BigInt> = (1..=19).map(|d| witt(2, d)).collect();
    let tail: Vec<i64> = v[15..].iter().map(|x| i64::try_from(x).unwrap_or(-1)).collect();
    checks.push(Check::equal("a_16..a_19", vec![4080, 7710, 14532, 27594], tail));
    bigs_json(&v)
}

fn commutator_dims(ctx: &Ctx, checks: &mut Vec<Check>) -> Result<Value, CmdError> {
    let series = c_series(3, 19)?;
    let tail: Vec<i64> = series[16..].iter().map(|x| i64::try_from(x).unwrap_or(-1)).collect();
    checks.push(Check::equal("series c_16..c_19", vec![4036, 6552, 10615, 17216], tail));
    let q = cubic(Fp::new(ctx.p1).map_err(Error::from)?, ctx.seed, 12)?;
    let rows = psi_ranks(&q, &PsiOptions { min_degree: 2, max_degree: 12, measure_c: true, series_check: false })?;
    let measured: Vec<Option<usize>> = rows.iter().map(|r| r.c).collect();
    let formula: Vec<Option<usize>> = (2..=12).map(|d| usize::try_from(&series[d]).ok()).collect();
    checks.push(Check::equal("measured c_2..c_12 equal the series", formula, measured.clone()));
    Ok(json!({"series": bigs_json(&series), "measured_2_to_12": measured}))
}

fn psi_cubic(ctx: &Ctx, checks: &mut Vec<Check>) -> Result<Value, CmdError> {
    let hi = if ctx.extended { 19 } else { 16 };
    let runs = [(ctx.seed, ctx.p1), (ctx.seed, ctx.p2), (ctx.seed + 1, ctx.p1), (ctx.seed + 1, ctx.p2)];
    let results = psi_runs(2, &PsiSource::Random(vec![3]), &runs, 16, hi, true)?;
    let merged = merge_runs(&results);
    checks.push(Check::holds("stable across two seeds and two primes", merged.iter().all(|r| r.stable)));
    for &(d, rank, coker) in known_psi(&[3]).iter().filter(|k| k.0 <= hi) {
        let r = merged.iter().find(|r| r.degree == d);
        checks.push(Check::equal(format!("degree {d}: rank and cokernel"), json!([rank, coker]), json!(r.map(|r| (r.rank, r.coker)))));
    }
    Ok(stable_rows_json(&merged))
}

fn psi_two_relations(ctx: &Ctx, checks: &mut Vec<Check>) -> Result<Value, CmdError> {
    let runs = [(ctx.seed, ctx.p1), (ctx.seed, ctx.p2)];
    let results = psi_runs(2, &PsiSource::Random(vec![3, 8]), &runs, 15, 16, true)?;
    let merged = merge_runs(&results);
    checks.push(Check::holds("stable across two primes", merged.iter().all(|r| r.stable)));
    for &(d, rank, coker) in known_psi(&[3, 8]) {
        let r = merged.iter().find(|r| r.degree == d);
        checks.push(Check::equal(format!("degree {d}: rank, onto"), json!([rank, coker]), json!(r.map(|r| (r.rank, r.coker)))));
    }
    Ok(stable_rows_json(&merged))
}

fn cubic_hilbert(ctx: &Ctx, checks: &mut Vec<Check>) -> Result<Value, CmdError> {
    let q = cubic(Fp::new(ctx.p1).map_err(Error::from)?, ctx.seed, 16)?;
    let dims: Vec<i64> = q.hilbert_dims().iter().map(|&x| x as i64).collect();
    let expected = quotient_hilbert(2, &[3], 16)?.to_i64s().unwrap_or_default();
    checks.push(Check::equal("dimensions through degree 16", expected, dims.clone()));
    Ok(json!(dims))
}

fn cubic_b2(ctx: &Ctx, checks: &mut Vec<Check>) -> Result<Value, CmdError> {
    let alg = QuotientAlgebra::new(cubic(Fp::new(ctx.p1).map_err(Error::from)?, ctx.seed, 12)?);
    let table = Lcs::new(&alg).table(2, 12)?;
    let b2 = table.b[1].clone();
    let mut expected = vec![0usize; 13];
    expected[2..5].copy_from_slice(&[1, 2, 1]);
    checks.push(Check::equal("B2 by degree 0..12", expected, b2.clone()));
    Ok(json!(b2))
}

fn star_forms(checks: &mut Vec<Check>) -> Result<Value, CmdError> {
    let mut out = Vec::new();
    for (n, dmax) in [(2, 8), (3, 6)] {
        let rows = check_fs_parts(Rationals, n, dmax)?;
        let pass: Vec<bool> = rows.iter().map(|r| r.holds()).collect();
        checks.push(Check::equal(format!("n = {n}: parts 1, 2, 4, 5 through degree {dmax}"), vec![true; pass.len()], pass));
        let quot: Vec<usize> = rows.iter().map(|r| r.dim_a - r.dim_m3).collect();
        if n == 2 {
            let expected: Vec<usize> = (0..=dmax).map(|d| if d == 0 { 1 } else { 2 * d }).collect();
            checks.push(Check::equal("dim (A_2/M_3)[d] = 2d", expected, quot.clone()));
        }
        out.push(json!({"n": n, "dim_a_mod_m3": quot, "dim_exact": rows.iter().map(|r| r.dim_exact).collect::<Vec<_>>()}));
    }
    Ok(Value::Array(out))
}

fn l2_cap_m3(checks: &mut Vec<Check>) -> Result<Value, CmdError> {
    let mut out = Vec::new();
    for (n, dmax) in [(2, 8), (3, 7)] {
        let alg = FreeAlgebra::new(Rationals, n, dmax)?;
        let rows = Lcs::new(&alg).l2_cap_m3(dmax)?;
        let bad: Vec<usize> = rows.iter().filter(|r| !r.1).map(|r| r.0).collect();
        checks.push(Check::equal(format!("n = {n}, degrees ≤ {dmax}: failing degrees"), Vec::<usize>::new(), bad));
        out.push(json!({"n": n, "dims": rows.iter().map(|r| (r.0, r.2, r.3)).collect::<Vec<_>>()}));
    }
    Ok(Value::Array(out))
}

fn inclusion_suite<F: Field>(f: F, n: usize, dmax: usize, full: bool, checks: &mut Vec<Check>) -> Result<Value, CmdError> {
    let alg = FreeAlgebra::new(f.clone(), n, dmax)?;
    let mut lcs = Lcs::new(&alg);
    let tag = format!("n = {n} over {}", field_label(f.spec()));
    let total = |v: Vec<(usize, usize)>| v.iter().map(|x| x.1).sum::<usize>();
    let mut defects = serde_json::Map::new();
    let mut record = |name: String, d: usize, checks: &mut Vec<Check>| {
        checks.push(Check::equal(format!("{tag}: {name} defect"), 0, d));
        defects.insert(name, json!(d));
    };
    if full {
        for (i, j) in [(2, 2), (2, 3), (3, 3)] {
            let d = total(lcs.product_defects(i, j, i + j - 2, dmax)?);
            record(format!("M{i}·M{j} ⊆ M{}", i + j - 2), d, checks);
        }
        let d = total(lcs.m2_power_defects(2, dmax)?);
        record("M2·M2 ⊆ M3".into(), d, checks);
        for m in 2..=4 {
            let d: usize = lcs.b_generation(m, dmax)?.iter().map(|r| r.1 - r.2).sum();
            record(format!("B{} = [A≤2, B{m}] mod L{}", m + 1, m + 2), d, checks);
        }
    }
    for (i, j) in [(2, 3), (3, 3)] {
        let d = total(lcs.product_defects(i, j, i + j - 1, dmax)?);
        record(format!("M{i}·M{j} ⊆ M{}", i + j - 1), d, checks);
    }
    Ok(json!({"field": field_label(f.spec()), "n": n, "D": dmax, "defects": defects}))
}

fn inclusions(ctx: &Ctx, checks: &mut Vec<Check>) -> Result<Value, CmdError> {
    let f = Fp::new(ctx.p1).map_err(Error::from)?;
    let mut out = Vec::new();
    for n in [2, 3] {
        out.push(inclusion_suite(f.clone(), n, 8, true, checks)?);
        out.push(inclusion_suite(Rationals, n, 8, false, checks)?);
    }
    out.push(inclusion_suite(Fp::new(5).map_err(Error::from)?, 2, 8, false, checks)?);
    Ok(Value::Array(out))
}

fn polylinear(checks: &mut Vec<Check>) -> Result<Value, CmdError> {
    let mut out = Vec::new();
    for s in [FieldSpec::Rational, FieldSpec::Prime(2), FieldSpec::Prime(3), FieldSpec::Prime(5), FieldSpec::Prime(7)] {
        let r = with_field!(s, f => polylinear_identities(f)?);
        checks.push(Check::holds(format!("∈ L3 over {}", field_label(s)), r.in_l3));
        checks.push(Check::equal(format!("∈ L4 over {}", field_label(s)), s != FieldSpec::Prime(3), r.in_l4));
        out.push(json!({"field": field_label(s), "in_l3": r.in_l3, "in_l4": r.in_l4}));
    }
    Ok(Value::Array(out))
}

fn identities(checks: &mut Vec<Check>) -> Result<Value, CmdError> {
    let mut rep = Report::new(crate::cli::RunConfig {
        command: String::new(),
        args: Value::Null,
        field: None,
        prime: 0,
        second_prime: 0,
        seed: 0,
        threads: 1,
        out: None,
    });
    identity_checks(&Rationals, &mut rep)?;
    let names: Vec<String> = rep.checks.iter().map(|c| c.name.clone()).collect();
    checks.extend(rep.checks);
    Ok(json!(names))
}

fn positivity(checks: &mut Vec<Check>) -> Result<Value, CmdError> {
    let p = positivity_threshold(3, 64)?;
    checks.push(Check::equal("smallest positive exponent through degree 64", Some(8), p.threshold));
    Ok(json!({"threshold": p.threshold, "witnesses": p.witnesses}))
}

fn vanishing(ctx: &Ctx, checks: &mut Vec<Check>) -> Result<Value, CmdError> {
    let dmax = 12;
    let alg = QuotientAlgebra::new(cubic(Fp::new(ctx.p1).map_err(Error::from)?, ctx.seed, dmax)?);
    let table = Lcs::new(&alg).table(3, dmax)?;
    let mut out = Vec::new();
    for row in vanishing_report(&table, 3, 3) {
        let m = row.m;
        checks.push(Check::holds(format!("B{m}[r] = 0 for r ≥ {}", row.b_bound), row.b_bound_holds));
        checks.push(Check::report_only(format!("conjectural: B{m}[r] = 0 for r ≥ {}", m + 3), json!(true), row.conjecture_holds));
        out.push(json!({"m": m, "B": table.b[m - 1], "top_b": row.top_b, "top_n": row.top_n}));
    }
    Ok(Value::Array(out))
}

fn random_poly<F: Field>(f: &F, n: usize, dmax: usize, rng: &mut ChaCha8Rng) -> FreePolynomial<F> {
    let mut p = FreePolynomial::zero(f.clone(), n);
    for d in 1..=dmax {
        let len = n.pow(d as u32);
        let coeffs: Vec<F::Elem> = (0..len).map(|_| f.random(rng)).collect();
        p = p.add(&FreePolynomial::from_dense(f.clone(), n, d, &coeffs)).expect("same ring");
    }
    p
}

fn random_form<F: Field>(f: &F, n: usize, even: bool, rng: &mut ChaCha8Rng) -> DifferentialForm<F> {
    let mut out = DifferentialForm::zero(f.clone(), n);
    for _ in 0..4 {
        let exps: Vec<u16> = (0..n).map(|_| rng.gen_range(0..3)).collect();
        let mask = loop {
            let m: u32 = rng.gen_range(0..(1 << n));
            if (m.count_ones() % 2 == 0) == even {
                break m;
            }
        };
        let c = f.random(rng);
        out = out.add(&DifferentialForm::monomial(f.clone(), n, exps, mask, c)).expect("same ring");
    }
    out
}

fn samples(ctx: &Ctx, checks: &mut Vec<Check>) -> Result<Value, CmdError> {
    let f = Fp::new(ctx.p1).map_err(Error::from)?;
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let trials = 16;
    let mut jacobi = 0;
    for _ in 0..trials {
        let (p, q, r) = (random_poly(&f, 2, 3, &mut rng), random_poly(&f, 2, 3, &mut rng), random_poly(&f, 2, 3, &mut rng));
        jacobi += jacobi_sum(&p, &q, &r)?.is_zero() as usize;
    }
    checks.push(Check::equal("Jacobi identity on random elements", trials, jacobi));
    let (mut dd, mut assoc) = (0, 0);
    for i in 0..trials {
        let a = random_form(&f, 3, i % 2 == 0, &mut rng);
        dd += a.de_rham().de_rham().is_zero() as usize;
        let (b, c) = (random_form(&f, 3, true, &mut rng), random_form(&f, 3, false, &mut rng));
        assoc += (a.star(&b)?.star(&c)? == a.star(&b.star(&c)?)?) as usize;
    }
    checks.push(Check::equal("d∘d = 0 on random forms", trials, dd));
    checks.push(Check::equal("star product associative on random forms", trials, assoc));
    let mut extracted = Vec::new();
    for n in 2..=4u64 {
        let exps = TruncSeries::from_i64s(&[1, -(n as i64)], 30).extract_exponents()?;
        let witts: Vec<BigInt> = (1..=30).map(|d| witt(n, d)).collect();
        let ok = exps == witts;
        let back = TruncSeries::from_exponents(&witts, 30) == TruncSeries::from_i64s(&[1, -(n as i64)], 30);
        checks.push(Check::holds(format!("1 - {n}t = ∏(1-t^d)^(a_d) through degree 30"), ok && back));
        extracted.push(ok && back);
    }
    let mut modular = 0;
    let dim = 8;
    for _ in 0..trials {
        let mut pick = |k: usize| {
            let rows: Vec<u32> = (0..k * dim).map(|_| if rng.gen_bool(0.3) { f.random(&mut rng) } else { 0 }).collect();
            Subspace::span_rows(f.clone(), dim, &rows)
        };
        let (u, v, w) = (pick(3)?, pick(4)?, pick(5)?);
        let u = u.intersect(&w)?;
        let lhs = u.sum(&v)?.intersect(&w)?;
        let rhs = u.sum(&v.intersect(&w)?)?;
        modular += (lhs == rhs) as usize;
    }
    checks.push(Check::equal("modular law for subspaces", trials, modular));
    Ok(json!({"trials": trials, "extraction": extracted}))
}
