//! Acceptance criteria, one line per criterion. Runs without the libtest
//! harness so the lines are always printed; exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use lmod_core::cover::{build_cover, homology, Conventions, Lifts};
use lmod_core::generators::{gen_r, gen_r1};
use lmod_core::liftability::{curve_lifts, is_liftable_word, w_size, w_size_exhaustive, CurveClass};
use lmod_core::linalg::Matrix;
use lmod_core::suite::{
    generation_certificate, verify_factorization_r1, verify_oracle_presentation, verify_relations,
    verify_smod_homology, Claim, GenerationCertificate, HOMOLOGY_QUALIFIER,
};
use lmod_core::{Context, FreeWord, GenerationGroup, Group, Letter, Oracle, Status, Word};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ctx(n: u32, k: u32) -> Context {
    Context::new(n, k).unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ensure_pass(c: &Claim) -> Outcome {
    ensure(c.status == Status::Pass, || {
        format!(
            "{} at n={} k={}: {:?} {:?}",
            c.id,
            c.ctx.n(),
            c.ctx.k(),
            c.status,
            c.note
        )
    })
}

fn within(start: Instant, limit: Duration) -> Outcome {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:?}, limit {limit:?}"))
}

fn oracle_validation() -> Outcome {
    let start = Instant::now();
    let oracle = Oracle::default();
    for n in 1..=4 {
        let claim = verify_oracle_presentation(&ctx(n, 3), &oracle);
        ensure_pass(&claim)?;
        let refuted = claim
            .witness
            .as_ref()
            .unwrap()
            .equalities
            .iter()
            .filter(|e| !e.expected)
            .count();
        ensure(refuted == 2, || {
            format!("n={n}: expected two refutations, found {refuted}")
        })?;
    }
    within(start, Duration::from_secs(60))
}

fn factorization() -> Outcome {
    let start = Instant::now();
    let oracle = Oracle::default();
    for n in 1..=4 {
        ensure_pass(&verify_factorization_r1(&ctx(n, 3), &oracle))?;
    }
    within(start, Duration::from_secs(300))
}

fn orders() -> Outcome {
    let oracle = Oracle::default();
    for n in 1..=4 {
        let c = ctx(n, 3);
        let m = c.points() as u64;
        let r = oracle
            .order_of(&gen_r(&c), Group::Sphere, &c, m)
            .map_err(|e| e.to_string())?;
        let r1 = oracle
            .order_of(&gen_r1(&c), Group::Sphere, &c, 2 * m)
            .map_err(|e| e.to_string())?;
        ensure(r == Some(2), || format!("n={n}: order of r is {r:?}"))?;
        ensure(r1 == Some(m), || format!("n={n}: order of r1 is {r1:?}"))?;
    }
    Ok(())
}

fn relations() -> Outcome {
    let oracle = Oracle::default();
    for n in 1..=4 {
        let claims = verify_relations(&ctx(n, 3), &oracle);
        for c in &claims {
            ensure_pass(c)?;
        }
        let find = |id: &str| claims.iter().find(|c| c.id == id).ok_or(format!("missing {id}"));
        let count =
            |id: &str| -> Result<usize, String> { Ok(find(id)?.witness.as_ref().map_or(0, |w| w.equalities.len())) };
        let two_a = count("Rel-conj-t-disk")? + count("Rel-conj-t-sphere")?;
        ensure(two_a == 2 * n as usize, || {
            format!("n={n}: {two_a} instances of h_i t_{{i,i+1}} h_i^-1 = t_{{i+1,i+2}}")
        })?;
        let m = 2 * n as usize + 1;
        let admissible = (1..=m).flat_map(|i| (i + 2..=m).map(move |j| (i, j))).count();
        ensure(count("Rel-t-factorization")? == admissible, || {
            format!("n={n}: t_{{i,j}} factorization instance count")
        })?;
        let shift = if n >= 2 { 2 * n as usize - 3 } else { 0 };
        ensure(count("Lemma-shift")? == shift, || {
            format!("n={n}: shift lemma instance count")
        })?;
    }
    Ok(())
}

fn generation() -> Outcome {
    let oracle = Oracle::default();
    let dir = std::env::temp_dir().join(format!("lmod-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let mut cases = Vec::new();
    for n in 1..=3 {
        cases.push((GenerationGroup::LmodSphere, n));
        cases.push((GenerationGroup::LmodStar, n));
        cases.push((GenerationGroup::LmodDisk, n));
    }
    let result = (|| {
        for (group, n) in cases {
            let c = ctx(n, 3);
            let cert = generation_certificate(group, &c, &oracle).map_err(|e| e.to_string())?;
            ensure(cert.passed(), || format!("{group} n={n}: certificate does not pass"))?;
            let expected = group.basis(&c).symbols();
            let symbols: Vec<_> = cert.basis.iter().map(|b| b.symbol).collect();
            ensure(symbols == expected, || format!("{group} n={n}: basis {symbols:?}"))?;
            // Re-verify from the file only.
            let path = dir.join(format!("{group}-{n}.json"));
            std::fs::write(&path, serde_json::to_string(&cert).unwrap()).map_err(|e| e.to_string())?;
            let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
            let back: GenerationCertificate = serde_json::from_str(&text).map_err(|e| e.to_string())?;
            let ok = back.reverify(&oracle).map_err(|e| e.to_string())?;
            ensure(ok, || format!("{group} n={n}: certificate file does not re-verify"))?;
        }
        Ok(())
    })();
    let _ = std::fs::remove_dir_all(&dir);
    result
}

fn random_word(rng: &mut StdRng, ctx: &Context) -> Word {
    let len = rng.random_range(0..16);
    (0..len)
        .map(|_| Letter::new(rng.random_range(1..=ctx.max_sigma()), rng.random_bool(0.5)))
        .collect()
}

fn liftability() -> Outcome {
    for n in 1..=3 {
        let c = ctx(n, 3);
        let counted = w_size_exhaustive(&c);
        ensure(counted == w_size(&c), || format!("n={n}: |W| = {counted}"))?;
    }
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for n in 1..=3 {
        let c = ctx(n, 3);
        let mut pool = Vec::new();
        while pool.len() < 200 {
            let w = random_word(&mut rng, &c);
            if is_liftable_word(&w, &c) {
                pool.push(w);
            }
        }
        for _ in 0..10_000 {
            let u = &pool[rng.random_range(0..pool.len())];
            let v = &pool[rng.random_range(0..pool.len())];
            ensure(is_liftable_word(&u.concat(v), &c), || {
                format!("n={n}: {u} · {v} not liftable")
            })?;
            ensure(is_liftable_word(&u.inverse(), &c), || {
                format!("n={n}: {u}^-1 not liftable")
            })?;
        }
    }
    for k in 3..=5 {
        for n in 1..=2 {
            let c = ctx(n, k);
            for i in 1..c.points() {
                let g = CurveClass::gamma(i, i + 1, &c).unwrap();
                ensure(curve_lifts(&g, &c), || {
                    format!("k={k}: gamma_{i},{} does not lift", i + 1)
                })?;
            }
            let x1 = CurveClass::new(FreeWord::generator(1), &c).unwrap();
            ensure(!curve_lifts(&x1, &c), || format!("k={k}: x1 lifts"))?;
        }
    }
    Ok(())
}

fn cover_builder() -> Outcome {
    for n in 1..=4 {
        for k in 2..=5 {
            let c = ctx(n, k);
            let s = build_cover(&c);
            let g = c.g() as usize;
            ensure(s.euler_characteristic() == 2 - 2 * (n * (k - 1)) as i64, || {
                format!("({n},{k}): chi")
            })?;
            let h = homology(&s).map_err(|e| format!("({n},{k}): {e}"))?;
            ensure(h.rank() == 2 * g, || format!("({n},{k}): rank {}", h.rank()))?;
            let det = h.raw_form.determinant().map_err(|e| e.to_string())?;
            ensure(h.raw_form.is_skew() && det == 1, || {
                format!("({n},{k}): J not skew unimodular")
            })?;
            ensure(h.form == Matrix::standard_symplectic(2 * g), || {
                format!("({n},{k}): J not standard")
            })?;
            let zeta = h.matrix_of(|x| s.deck(x)).map_err(|e| e.to_string())?;
            let id = Matrix::identity(2 * g);
            let rank = zeta.sub(&id).and_then(|d| d.rank()).map_err(|e| e.to_string())?;
            ensure(rank == 2 * g, || format!("({n},{k}): rank(M_zeta - I) = {rank}"))?;
            for d in 1..=k as u64 {
                let trivial = zeta.pow(d).map_err(|e| e.to_string())?.is_identity();
                ensure(trivial == (d == k as u64), || {
                    format!("({n},{k}): M_zeta^{d} trivial = {trivial}")
                })?;
            }
        }
    }
    Ok(())
}

fn smod_homology() -> Outcome {
    let start = Instant::now();
    for n in 1..=3 {
        for k in 3..=4 {
            let claims = verify_smod_homology(&ctx(n, k), Conventions::default());
            for id in [
                "Hom-conj-t",
                "Hom-conj-h",
                "Hom-zeta-factorization",
                "Hom-normalizes-deck",
            ] {
                let c = claims.iter().find(|c| c.id == id).ok_or(format!("missing {id}"))?;
                ensure_pass(c)?;
                ensure(c.qualifier.as_deref() == Some(HOMOLOGY_QUALIFIER), || {
                    format!("{id} lacks the qualifier")
                })?;
            }
        }
    }
    within(start, Duration::from_secs(120))
}

fn chain_pattern() -> Outcome {
    for n in 1..=2 {
        for k in 3..=4 {
            let c = ctx(n, k);
            let lifts = Lifts::new(&c, Conventions::default()).map_err(|e| e.to_string())?;
            let h = lifts.homology();
            for i in 1..=2 * n {
                let chain = lifts.chain(i);
                ensure(chain.len() == 2 * k as usize - 1, || {
                    format!("chain length {}", chain.len())
                })?;
                for (a, &(ca, la)) in chain.iter().enumerate() {
                    for (b, &(cb, lb)) in chain.iter().enumerate() {
                        let x = h
                            .intersection(&lifts.gamma(ca, la), &lifts.gamma(cb, lb))
                            .map_err(|e| e.to_string())?;
                        let want_one = a.abs_diff(b) == 1;
                        ensure(if want_one { x.abs() == 1 } else { x == 0 }, || {
                            format!("({n},{k}) chain {i}: <gamma_{ca}^{la}, gamma_{cb}^{lb}> = {x}")
                        })?;
                    }
                }
            }
            let claim = verify_smod_homology(&c, Conventions::default())
                .into_iter()
                .find(|c| c.id == "Hom-chain-pattern")
                .unwrap();
            ensure_pass(&claim)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("oracle validation", oracle_validation),
        ("r1 = rF factorization", factorization),
        ("generator orders", orders),
        ("relation suite", relations),
        ("generation certificates", generation),
        ("liftability", liftability),
        ("cover builder", cover_builder),
        ("homology-level SMod checks (necessary condition only)", smod_homology),
        ("chain pattern", chain_pattern),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let ms = start.elapsed().as_secs_f64() * 1000.0;
        match outcome {
            Ok(()) => println!("criterion {}: PASS  {name}  ({ms:.1} ms)", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}  ({ms:.1} ms): {e}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
