//! Acceptance suite: one PASS/FAIL line per criterion.

use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::sync::Arc;
use std::time::{Duration, Instant};

use exactnum::rational::{int, rat, Rational};
use exactnum::{is_irreducible, IntPoly, RationalMatrix};
use num_traits::{One, Zero};
use otkit::otlike::{c_equivalent, standard_structure, symbolic_lck_ot_like};
use otkit::{
    check_admissible, converse, fast_irreducibility, forward_lattice, matrix_c, nijenhuis, normalize_meta_abelian_lck,
    pluriclosed_condition, rank_bound_probe, rational_ot_like, search_units, semidirect, sol3_demo, verify_lck, Branch,
    ConverseVerdict, KForm, MatrixFamily, NormalizationBranch, NumberField, RankBranch, RankVerdict, UnitGroup,
    ZModule,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn field(c: &[i64]) -> Arc<NumberField> {
    NumberField::from_i64s(c).unwrap()
}

fn within(t: Instant, limit: Duration, what: &str) -> Result<Duration, String> {
    let e = t.elapsed();
    ensure(e < limit, format!("{what} took {e:?}, limit {limit:?}"))?;
    Ok(e)
}

fn symbolic_replay() -> Outcome {
    let t0 = Instant::now();
    for (s, t) in [(1, 1), (2, 1), (1, 2), (2, 2), (3, 1)] {
        let g = symbolic_lck_ot_like(s, t).map_err(|e| e.to_string())?;
        let st = standard_structure(&g).map_err(|e| e.to_string())?;
        let r = verify_lck(&g.algebra, &st.hermitian, None).map_err(|e| e.to_string())?;
        ensure(r.lck_residual.is_zero(), format!("({s},{t}): residual is not the zero polynomial"))?;
        ensure(r.lck, format!("({s},{t}): not LCK"))?;
        let nij = nijenhuis(&g.algebra, &st.hermitian);
        ensure(nij.integrable, format!("({s},{t}): Nijenhuis tensor nonzero at {:?}", nij.witness))?;
    }
    let e = within(t0, Duration::from_secs(10), "symbolic replay")?;
    Ok(format!("5 signatures, residual and N_J identically zero, {e:.2?}"))
}

fn inoue_round_trip() -> Outcome {
    let t0 = Instant::now();
    let k = field(&[-1, -1, 0, 1]);
    let u = UnitGroup::new(&k, vec![k.generator()]).map_err(|e| e.to_string())?;
    let adm = check_admissible(&u, 64).map_err(|e| e.to_string())?;
    ensure(adm.is_admissible(), "⟨α⟩ not admissible")?;
    let c = matrix_c(&u, 64, &Branch::Principal).map_err(|e| e.to_string())?;
    let tol = Rational::new(1.into(), num_bigint::BigInt::from(10u64).pow(12));
    let re = c.re(0, 0);
    let half = rat(-1, 2);
    ensure(re.lo() >= &(&half - &tol) && re.hi() <= &(&half + &tol), format!("Re c11 = {re:?}"))?;
    let fl = forward_lattice(&u, &ZModule::power_basis(&k), &c).map_err(|e| e.to_string())?;
    let m = &fl.matrices[0];
    let f = IntPoly::from_i64s(&[-1, -1, 0, 1]);
    ensure(m.charpoly().map_err(|e| e.to_string())?.to_int_primitive() == f, "forward char poly")?;
    ensure(m.det().map_err(|e| e.to_string())?.is_one(), "forward det")?;
    let rows: Vec<Vec<i64>> =
        m.to_rows().iter().map(|r| r.iter().map(|x| i64::try_from(x.to_integer()).unwrap()).collect()).collect();
    let rep = converse(&MatrixFamily::new(vec![rows]), 64).map_err(|e| e.to_string())?;
    ensure(rep.verdict == ConverseVerdict::Ot, format!("converse verdict {:?}", rep.verdict))?;
    ensure(rep.units.len() == 1 && rep.units[0].min_poly == f, "recovered unit min poly")?;
    ensure(rep.signature == Some((1, 1)), format!("signature {:?}", rep.signature))?;
    let e = within(t0, Duration::from_secs(5), "Inoue round trip")?;
    Ok(format!("Re c11 ⊂ −1/2 ± 1e-12, char poly x³−x−1, det 1, converse OT (1,1), {e:.2?}"))
}

fn elementary_product(rng: &mut ChaCha8Rng, n: usize) -> RationalMatrix {
    let mut m = RationalMatrix::identity(n);
    for _ in 0..rng.gen_range(1..=3 * n + 4) {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i == j {
            continue;
        }
        let mut e = RationalMatrix::identity(n);
        e.set(i, j, int(rng.gen_range(-2..=2)));
        m = m.mul(&e).unwrap();
    }
    m
}

fn fast_path_coherence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let (mut applied, mut bad) = (0, 0);
    for _ in 0..500 {
        let n = rng.gen_range(2..=5);
        let m = elementary_product(&mut rng, n);
        ensure(m.det().unwrap().is_one(), "sample left SL(n, Z)")?;
        if fast_irreducibility(&m).applies() {
            applied += 1;
            if !is_irreducible(&m.charpoly().unwrap().to_int_primitive()).map_err(|e| e.to_string())? {
                bad += 1;
            }
        }
    }
    ensure(bad == 0, format!("{bad} discrepancies"))?;
    ensure(applied > 0, "the fast path never applied")?;
    Ok(format!("500 samples, fast path applied {applied} times, 0 discrepancies"))
}

fn rank_bound_corpus() -> Outcome {
    let corpus: [&[i64]; 6] = [
        &[-1, -1, 0, 0, 0, 1],
        &[-1, 0, -1, 0, 0, 1],
        &[-1, 0, 1, 0, 0, 1],
        &[-1, -1, 0, 0, 0, 0, 1],
        &[-1, 0, -1, 0, 0, 0, 1],
        &[-1, 1, 0, 0, 0, 0, 1],
    ];
    let mut notes = Vec::new();
    for c in corpus {
        let t0 = Instant::now();
        let k = field(c);
        let (s, t) = k.signature();
        ensure(s >= 1 && t >= 2, format!("{:?} has signature ({s},{t})", k.min_poly()))?;
        let r = rank_bound_probe(&k, 3, RankBranch::A1, true).map_err(|e| e.to_string())?;
        ensure(r.verdict == RankVerdict::Consistent, format!("{:?}: verdict {:?}", k.min_poly(), r.verdict))?;
        ensure(r.rank_bound == Some(s - 1), "rank bound")?;
        ensure(r.log_rank < s, format!("{:?}: log-rank {} > s − 1", k.min_poly(), r.log_rank))?;
        let e = within(t0, Duration::from_secs(60), "rank probe")?;
        notes.push(format!("({s},{t}) log-rank {} from {} LCK units in {e:.1?}", r.log_rank, r.survivors));
    }
    Ok(format!("6 fields at B = 3: {}", notes.join(", ")))
}

fn pluriclosed_norm_identity() -> Outcome {
    let mut checked = 0;
    for c in [[-1i64, -1, 0, 1], [-1, 0, -1, 1]] {
        let k = field(&c);
        ensure(k.signature() == (1, 1), "signature")?;
        for u in search_units(&k, 3).map_err(|e| e.to_string())? {
            if !u.is_totally_positive() || !u.norm().is_one() {
                continue;
            }
            let g = UnitGroup::new(&k, vec![u.clone()]).map_err(|e| e.to_string())?;
            let p = pluriclosed_condition(&g, true).map_err(|e| e.to_string())?;
            ensure(p.holds, format!("{:?} fails", u.coords()))?;
            checked += 1;
        }
    }
    ensure(checked >= 2, format!("only {checked} units found"))?;
    Ok(format!("{checked} totally positive norm-1 units pass exactly"))
}

fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> RationalMatrix {
    loop {
        let rows: Vec<Vec<Rational>> = (0..n).map(|_| (0..n).map(|_| int(rng.gen_range(-2..=2))).collect()).collect();
        let m = RationalMatrix::from_rows(rows).unwrap();
        if !m.det().unwrap().is_zero() {
            return m;
        }
    }
}

fn normalization_round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for k in 0..20 {
        let (s, t) = if k % 2 == 0 { (1, 1) } else { (2, 1) };
        let re = vec![vec![rat(-1, 2 * t as i64); s]; t];
        let im: Vec<Vec<Rational>> =
            (0..t).map(|_| (0..s).map(|_| rat(rng.gen_range(-6..=6), rng.gen_range(1..=4))).collect()).collect();
        let g = rational_ot_like(re, im).map_err(|e| e.to_string())?;
        let st = standard_structure(&g).map_err(|e| e.to_string())?;
        let b = random_invertible(&mut rng, g.dim());
        let alg = g.algebra.change_basis(&b).map_err(|e| e.to_string())?;
        let h = st.hermitian.change_basis(&b).map_err(|e| e.to_string())?.scaled(&rat(rng.gen_range(1..=9), 5));
        let res = normalize_meta_abelian_lck(&alg, &h, None).map_err(|e| format!("instance {k}: {e}"))?;
        ensure(res.branch == NormalizationBranch::OtLike, format!("instance {k}: branch"))?;
        ensure((res.s, res.t) == (Some(s), Some(t)), format!("instance {k}: signature"))?;
        let (re2, im2) = res.c.as_ref().ok_or("no C")?.parts();
        ensure(c_equivalent((&re2, &im2), (&g.re, &g.im)), format!("instance {k}: C not equivalent"))?;
        if let Some(c) = res.checks.iter().find(|c| !c.passed) {
            return Err(format!("instance {k}: check {} failed", c.name));
        }
    }
    Ok("20 scrambled instances recover (s,t) and C; all exact checks pass".into())
}

fn sol3() -> Outcome {
    let r = sol3_demo(&[vec![2, 1], vec![1, 1]], 128, exactnum::DEFAULT_PRECISION_CAP).map_err(|e| e.to_string())?;
    let tol = Rational::new(1.into(), num_bigint::BigInt::from(10u64).pow(30));
    let cp = IntPoly::from_i64s(&[1, -3, 1]);
    ensure(r.eigenvalues.len() == 2, "two eigenvalues")?;
    for e in &r.eigenvalues {
        ensure(e.width() < tol, format!("eigenvalue width {}", e.width()))?;
        ensure(cp.eval_interval(e).contains_zero(), "enclosure misses a root of x²−3x+1")?;
    }
    // (3 + √5)/2 ∈ (2.61, 2.62) and (3 − √5)/2 ∈ (0.38, 0.39).
    ensure(r.eigenvalues[0].lo() > &rat(261, 100) && r.eigenvalues[0].hi() < &rat(262, 100), "λ")?;
    ensure(r.eigenvalues[1].lo() > &rat(38, 100) && r.eigenvalues[1].hi() < &rat(39, 100), "λ⁻¹")?;
    let c = &r.converse;
    ensure(matches!(c.verdict, ConverseVerdict::NotOtLike { .. }), format!("verdict {:?}", c.verdict))?;
    ensure(c.field.as_ref() == Some(&cp), format!("field {:?}", c.field))?;
    ensure(c.signature == Some((2, 0)), format!("signature {:?}", c.signature))?;
    Ok("eigenvalue widths < 1e-30, NotOtLike with x²−3x+1, (2,0)".into())
}

fn random_form(rng: &mut ChaCha8Rng, dim: usize, degree: usize) -> KForm<Rational> {
    let mut f = KForm::zero(dim, degree);
    for _ in 0..6 {
        let mut idx: Vec<usize> = (0..dim).collect();
        for i in 0..degree {
            let j = rng.gen_range(i..dim);
            idx.swap(i, j);
        }
        let mut idx = idx[..degree].to_vec();
        idx.sort_unstable();
        f.set(idx, int(rng.gen_range(-3..=3)));
    }
    f
}

fn is_meta_abelian(alg: &otkit::LieAlgebra<Rational>) -> bool {
    let Some(d) = alg.derived_span() else { return false };
    d.iter().all(|a| d.iter().all(|b| alg.bracket(a, b).iter().all(Zero::is_zero)))
}

fn jobs_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../jobs")
}

fn infrastructure() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for k in 0..100 {
        let m = rng.gen_range(2..=4);
        let a: Vec<Vec<i64>> = (0..m).map(|_| (0..m).map(|_| rng.gen_range(-3..=3)).collect()).collect();
        let a = RationalMatrix::from_i64(&a);
        let p = [int(rng.gen_range(-2..=2)), int(rng.gen_range(-2..=2)), int(rng.gen_range(-2..=2))];
        let b = a.mul(&a).unwrap().scale(&p[0]).add(&a.scale(&p[1])).add(&RationalMatrix::identity(m).scale(&p[2]));
        let alg = semidirect(&[a, b]).map_err(|e| format!("algebra {k}: {e}"))?;
        ensure(is_meta_abelian(&alg), format!("algebra {k} is not meta-abelian"))?;
        for degree in 1..alg.dim() {
            let w = random_form(&mut rng, alg.dim(), degree);
            ensure(alg.ce_differential(&alg.ce_differential(&w)).is_zero(), format!("algebra {k}: d∘d ≠ 0"))?;
        }
    }
    let mut jobs: Vec<PathBuf> = std::fs::read_dir(jobs_dir())
        .map_err(|e| e.to_string())?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    jobs.sort();
    ensure(!jobs.is_empty(), "no job files")?;
    for job in &jobs {
        let run = || Command::new(env!("CARGO_BIN_EXE_otkit")).arg("run").arg(job).output().map_err(|e| e.to_string());
        let (a, b) = (run()?, run()?);
        ensure(a.status.code() != Some(1), format!("{}: internal error", job.display()))?;
        ensure(a.stdout == b.stdout && a.status == b.status, format!("{} is not deterministic", job.display()))?;
    }
    Ok(format!("d∘d = 0 on 100 algebras; {} jobs byte-identical across runs", jobs.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("symbolic LCK replay", symbolic_replay),
        ("Inoue round trip", inoue_round_trip),
        ("fast irreducibility coherence", fast_path_coherence),
        ("LCK rank bound for t ≥ 2", rank_bound_corpus),
        ("pluriclosed norm identity", pluriclosed_norm_identity),
        ("normalization round trip", normalization_round_trip),
        ("Sol³ demo", sol3),
        ("d∘d and determinism", infrastructure),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(msg) => println!("PASS {} {name}: {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {} {name}: {msg}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
