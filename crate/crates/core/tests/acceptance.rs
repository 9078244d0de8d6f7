//! Acceptance gate: ten end-to-end criteria, each printed as a single
//! pass/fail line with its runtime, and each held to a pinned time
//! budget. The suite covers axiom checks with negative controls, the
//! homotopy coboundary restatement, nerve/Moore round-trips over an
//! exhaustive census, quasi-isomorphism of butterfly fractions, derived
//! butterfly laws, composition up to isomorphism, torsor pushforward,
//! cocycle classes against pi0, splitting recovery, and byte-stable CLI
//! output.

use std::time::{Duration, Instant};

use xbim::algebra::mod4_extension;
use xbim::butterfly::{
    compose, detect_strong_splitting, find_isomorphisms, fraction, from_extension, from_morphism,
    Butterfly,
};
use xbim::catring::nerve;
use xbim::census;
use xbim::cocycle::{classes, Cocycle};
use xbim::crossed::{
    enumerate_morphisms, find_crossed_isos, truncate_moore, CrossedBimodule, XbmMorphism,
};
use xbim::fixtures;
use xbim::torsor::{apply_butterfly, find_torsor_isos, product, trivial_torsor};
use xbim::zmod::hom_enumerate;
use xbim::DEFAULT_BOUND;

const BOUND: u64 = DEFAULT_BOUND;

struct Outcome {
    name: &'static str,
    limit: Duration,
    elapsed: Duration,
    result: Result<String, String>,
}

fn criterion(
    name: &'static str,
    limit_secs: u64,
    body: impl FnOnce() -> Result<String, String>,
) -> Outcome {
    let start = Instant::now();
    let result = body();
    Outcome { name, limit: Duration::from_secs(limit_secs), elapsed: start.elapsed(), result }
}

fn err(msg: impl Into<String>) -> String {
    msg.into()
}

/// Criterion 1: the fixture corpus passes the axiom checks and mutated
/// negatives fail with the right law names.
fn axiom_suite() -> Result<String, String> {
    for (name, x) in fixtures::corpus() {
        let report = x.check_exhaustive();
        if !report.ok() {
            return Err(err(format!("{name} fails: {report}")));
        }
    }
    let broken = fixtures::ideal_in_z4_broken_right_action();
    let report = broken.check();
    if report.ok() {
        return Err(err("broken right action passes"));
    }
    if !report.violations.iter().any(|v| v.law.contains("right")) {
        return Err(err(format!("wrong witness for the broken action: {report}")));
    }
    // A bimodule map over a small ring that breaks only the Pfeiffer
    // identity, so the witness names exactly that law.
    let mut pfeiffer_negatives = 0;
    for r in census::small_rings(4) {
        for b in census::small_bimodules(&r, 4) {
            for del in
                hom_enumerate(b.additive(), r.additive(), BOUND).map_err(|e| e.to_string())?
            {
                let mutant = CrossedBimodule::new(r.clone(), b.clone(), del);
                let report = mutant.check();
                if !report.ok()
                    && report.violations.iter().all(|v| v.law == "Pfeiffer identity")
                {
                    pfeiffer_negatives += 1;
                }
            }
        }
    }
    if pfeiffer_negatives == 0 {
        return Err(err("no differential mutation exposes the Pfeiffer check"));
    }
    Ok(format!("corpus ok, {pfeiffer_negatives} Pfeiffer negatives witnessed"))
}

/// Criterion 2: for every strict morphism between corpus objects and
/// every additive map h, the multiplicative homotopy law holds exactly
/// when the coboundary of h equals the Peiffer square of h.
fn homotopy_restatement() -> Result<String, String> {
    let corpus = fixtures::corpus();
    let mut checked = 0u64;
    for (_, source) in &corpus {
        for (_, target) in &corpus {
            let s = source.ring();
            let module = target.module();
            let morphisms =
                enumerate_morphisms(source, target, BOUND).map_err(|e| e.to_string())?;
            let hs = hom_enumerate(s.additive(), module.additive(), BOUND)
                .map_err(|e| e.to_string())?;
            for f in &morphisms {
                let alpha = f.alpha();
                for h in &hs {
                    let mut multiplicative = true;
                    let mut coboundary = true;
                    for a in s.elements() {
                        for b in s.elements() {
                            let ha = h.apply(&a);
                            let hb = h.apply(&b);
                            let cross = module.additive().add(
                                &module.act_left(&alpha.apply(&a), &hb),
                                &module.act_right(&ha, &alpha.apply(&b)),
                            );
                            let square =
                                module.act_left(&target.del().apply(&ha), &hb);
                            // h(ab) = α(a)h(b) + h(a)α(b) − ∂h(a)·h(b)
                            let lhs = h.apply(&s.mul(&a, &b));
                            let rhs = module.additive().sub(&cross, &square);
                            if lhs != rhs {
                                multiplicative = false;
                            }
                            // (δh)(a,b) = α(a)h(b) − h(ab) + h(a)α(b)
                            let delta = module.additive().sub(&cross, &lhs);
                            if delta != square {
                                coboundary = false;
                            }
                        }
                    }
                    if multiplicative != coboundary {
                        return Err(err("the two homotopy conditions disagree"));
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} (morphism, h) pairs, zero disagreements"))
}

/// Criterion 3: truncating the Moore complex of the two-truncated nerve
/// recovers the crossed bimodule, over the exhaustive census.
fn nerve_moore_round_trip(census: &[CrossedBimodule]) -> Result<String, String> {
    for x in census {
        let n = nerve(x, 2).map_err(|e| e.to_string())?;
        let simplicial = n.to_truncated().map_err(|e| e.to_string())?;
        let back = truncate_moore(&simplicial).map_err(|e| e.to_string())?;
        if find_crossed_isos(&back, x, BOUND).map_err(|e| e.to_string())?.is_empty() {
            return Err(err(format!(
                "round trip lost R{:?} M{:?}",
                x.ring().additive().moduli(),
                x.module().additive().moduli()
            )));
        }
    }
    Ok(format!("{} census objects recovered", census.len()))
}

/// Criterion 4: every butterfly built from a strict morphism or from an
/// algebra extension has a quasi-isomorphic left fraction wing.
fn fractions_are_quasi_isos(
    endo_butterflies: &[Butterfly],
    extensions: &[xbim::algebra::AlgExtension],
) -> Result<String, String> {
    for b in endo_butterflies {
        if !fraction(b).map_err(|e| e.to_string())?.qiso {
            return Err(err("a split butterfly fails the quasi-isomorphism test"));
        }
    }
    let mut ext_count = 0;
    for ext in extensions {
        let b = from_extension(ext).map_err(|e| e.to_string())?;
        if !fraction(&b).map_err(|e| e.to_string())?.qiso {
            return Err(err(format!(
                "extension of order {} fails the quasi-isomorphism test",
                ext.middle().order()
            )));
        }
        ext_count += 1;
    }
    Ok(format!("{} morphism + {ext_count} extension butterflies", endo_butterflies.len()))
}

/// Criterion 5: the derived butterfly laws hold element-wise on every
/// butterfly whose primary laws pass.
fn derived_laws_elementwise(butterflies: &[Butterfly]) -> Result<String, String> {
    let mut checked = 0u64;
    for b in butterflies {
        if !b.check().ok() {
            continue;
        }
        let e = b.center();
        let image: std::collections::BTreeSet<_> = b
            .target()
            .module()
            .additive()
            .elements()
            .map(|m| b.iota().apply(&m))
            .collect();
        for x in e.elements() {
            for m in b.target().module().additive().elements() {
                let im = b.iota().apply(&m);
                if !image.contains(&e.mul(&x, &im)) || !image.contains(&e.mul(&im, &x)) {
                    return Err(err("the image of iota is not an ideal"));
                }
            }
        }
        for n in b.source().module().additive().elements() {
            for m in b.target().module().additive().elements() {
                if e.mul(&b.kappa().apply(&n), &b.iota().apply(&m)) != e.zero() {
                    return Err(err("kappa(N) iota(M) != 0"));
                }
            }
        }
        for m in b.target().module().additive().elements() {
            for m2 in b.target().module().additive().elements() {
                let lhs = e.mul(&b.iota().apply(&m), &b.iota().apply(&m2));
                let rhs = b.iota().apply(&b.target().peiffer_product(&m, &m2));
                if lhs != rhs {
                    return Err(err("iota is not Peiffer-multiplicative"));
                }
            }
        }
        checked += 1;
    }
    Ok(format!("{checked} butterflies, element-wise"))
}

/// Criterion 6: composition with the identity is isomorphic to the
/// input, composition matches strict composition, and one associativity
/// triple closes up to isomorphism.
fn composition_laws() -> Result<String, String> {
    let x = fixtures::ideal_in_z4();
    let y = fixtures::two_torsion_zero_del();
    let alpha = xbim::algebra::RingHom::new(x.ring().clone(), y.ring().clone(), vec![vec![1]])
        .map_err(|e| e.to_string())?;
    let beta = xbim::zmod::GroupHom::identity(x.module().additive());
    let g = XbmMorphism::new(x.clone(), y.clone(), alpha, beta);
    let f = XbmMorphism::identity(&y);

    let id_x = from_morphism(&XbmMorphism::identity(&x)).map_err(|e| e.to_string())?;
    let id_y = from_morphism(&XbmMorphism::identity(&y)).map_err(|e| e.to_string())?;
    let bg = from_morphism(&g).map_err(|e| e.to_string())?;

    for composed in [
        compose(&id_x, &bg).map_err(|e| e.to_string())?,
        compose(&bg, &id_y).map_err(|e| e.to_string())?,
    ] {
        if find_isomorphisms(&composed, &bg, BOUND).map_err(|e| e.to_string())?.is_empty() {
            return Err(err("identity composition is not isomorphic to the input"));
        }
    }

    let bf = from_morphism(&f).map_err(|e| e.to_string())?;
    let via_butterflies = compose(&bg, &bf).map_err(|e| e.to_string())?;
    let direct = from_morphism(&f.compose(&g).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    if find_isomorphisms(&via_butterflies, &direct, BOUND).map_err(|e| e.to_string())?.is_empty() {
        return Err(err("butterfly composition deviates from strict composition"));
    }

    let left = compose(&compose(&id_x, &bg).map_err(|e| e.to_string())?, &id_y)
        .map_err(|e| e.to_string())?;
    let right = compose(&id_x, &compose(&bg, &id_y).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    if find_isomorphisms(&left, &right, BOUND).map_err(|e| e.to_string())?.is_empty() {
        return Err(err("associativity fails up to isomorphism"));
    }
    Ok("unit laws, strict comparison, associativity".into())
}

/// Criterion 7: pushing a trivial torsor along a split butterfly gives
/// the trivial torsor on the image, and the pushforward is monoidal.
fn torsor_pushforward() -> Result<String, String> {
    let corpus = fixtures::corpus();
    let mut checked = 0u64;
    for (_, source) in &corpus {
        for (_, target) in &corpus {
            for f in enumerate_morphisms(source, target, BOUND).map_err(|e| e.to_string())? {
                let b = from_morphism(&f).map_err(|e| e.to_string())?;
                for s in source.ring().elements() {
                    let pushed = apply_butterfly(&b, &trivial_torsor(source, &s))
                        .map_err(|e| e.to_string())?;
                    let expected = trivial_torsor(target, &f.alpha().apply(&s));
                    if find_torsor_isos(&pushed, &expected).map_err(|e| e.to_string())?.is_empty()
                    {
                        return Err(err("pushforward of a trivial torsor is not trivial(α(s))"));
                    }
                    for s2 in source.ring().elements() {
                        let t = trivial_torsor(source, &s);
                        let t2 = trivial_torsor(source, &s2);
                        let lhs = product(
                            &apply_butterfly(&b, &t).map_err(|e| e.to_string())?,
                            &apply_butterfly(&b, &t2).map_err(|e| e.to_string())?,
                        )
                        .map_err(|e| e.to_string())?;
                        let rhs = apply_butterfly(
                            &b,
                            &product(&t, &t2).map_err(|e| e.to_string())?,
                        )
                        .map_err(|e| e.to_string())?;
                        if find_torsor_isos(&lhs, &rhs).map_err(|e| e.to_string())?.is_empty() {
                            return Err(err("the pushforward is not monoidal"));
                        }
                        checked += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{checked} (morphism, torsor pair) cases"))
}

/// Criterion 8: cocycle sum and product close over all cocycles on
/// covers of size at most 3, and the class ring agrees with pi0.
fn cocycle_algebra() -> Result<String, String> {
    let picks = [fixtures::two_torsion_zero_del(), fixtures::ideal_in_z4()];
    let mut checked = 0u64;
    for x in &picks {
        let (p0, _) = x.pi0();
        for n in 1..=3usize {
            // Every cocycle is determined by r_1 and the m_1j.
            let rg = x.ring().additive();
            let mg = x.module().additive();
            let mut all = Vec::new();
            let count = rg.order() * mg.order().pow((n - 1) as u32);
            for code in 0..count {
                let mut rest = code;
                let r1 = rg.element_at(rest % rg.order());
                rest /= rg.order();
                let mut firsts = vec![mg.zero()];
                for _ in 1..n {
                    firsts.push(mg.element_at(rest % mg.order()));
                    rest /= mg.order();
                }
                let r = firsts
                    .iter()
                    .map(|m| rg.add(&r1, &x.del().apply(m)))
                    .collect();
                let m = (0..n)
                    .map(|i| (0..n).map(|j| mg.sub(&firsts[j], &firsts[i])).collect())
                    .collect();
                let z = Cocycle::new(x.clone(), r, m).map_err(|e| e.to_string())?;
                if !z.check().ok() {
                    return Err(err("an enumerated cocycle fails validity"));
                }
                all.push(z);
            }
            for a in &all {
                for b in &all {
                    if !a.sum(b).map_err(|e| e.to_string())?.check().ok()
                        || !a.mul(b).map_err(|e| e.to_string())?.check().ok()
                    {
                        return Err(err("sum/mul closure fails"));
                    }
                    checked += 1;
                }
            }
            let cs = classes(x, n, BOUND).map_err(|e| e.to_string())?;
            if cs.ring.order() != p0.order()
                || cs.ring.additive().moduli() != p0.additive().moduli()
            {
                return Err(err("the class ring deviates from pi0"));
            }
        }
    }
    Ok(format!("{checked} closure pairs, classes = pi0 on both fixtures"))
}

/// Criterion 9: splitting detection inverts from_morphism over the
/// morphism census, and the non-split mod-4 extension yields nothing.
fn splitting_round_trip(endos: &[XbmMorphism]) -> Result<String, String> {
    for f in endos {
        let b = from_morphism(f).map_err(|e| e.to_string())?;
        match detect_strong_splitting(&b, BOUND).map_err(|e| e.to_string())? {
            Some((_, recovered, iso)) => {
                if &recovered != f || !iso.check().ok() {
                    return Err(err("recovered morphism deviates from the input"));
                }
            }
            None => return Err(err("a split butterfly yields no splitting")),
        }
    }
    let b = from_extension(&mod4_extension()).map_err(|e| e.to_string())?;
    if detect_strong_splitting(&b, BOUND).map_err(|e| e.to_string())?.is_some() {
        return Err(err("the non-split mod-4 extension reports a splitting"));
    }
    Ok(format!("{} morphisms recovered, mod-4 extension empty", endos.len()))
}

/// Criterion 10: CLI output is byte-identical across repeated runs and
/// thread-count environments, and matches the committed golden files.
fn cli_determinism() -> Result<String, String> {
    let dir = std::path::PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let ws = dir.join("tests/fixtures/workspace.json").display().to_string();
    let cases: Vec<(Vec<&str>, &str)> = vec![
        (vec!["check", "ideal_in_z4", "--input", &ws], "check_ideal.json"),
        (vec!["pi", "ideal_in_z4", "--input", &ws], "pi_ideal.json"),
        (vec!["fraction", "split_id", "--input", &ws], "fraction_split_id.json"),
        (vec!["cocycle", "classes", "ideal_in_z4", "2", "--input", &ws], "cocycle_classes.json"),
        (vec!["enumerate", "4"], "enumerate_4.json"),
    ];
    for (args, golden_name) in &cases {
        let expected = std::fs::read(dir.join("tests/golden").join(golden_name))
            .map_err(|e| format!("missing golden {golden_name}: {e}"))?;
        for threads in ["1", "2", "8"] {
            let out = std::process::Command::new(env!("CARGO_BIN_EXE_xbim"))
                .args(args)
                .env("RAYON_NUM_THREADS", threads)
                .env("RUST_TEST_THREADS", threads)
                .output()
                .map_err(|e| e.to_string())?;
            if out.stdout != expected {
                return Err(err(format!("{args:?} deviates from {golden_name}")));
            }
        }
    }
    Ok(format!("{} commands, three thread settings each", cases.len()))
}

#[test]
fn acceptance() {
    // Shared census structures; their construction time is billed to
    // the first criterion that needs them.
    let mut outcomes = Vec::new();

    outcomes.push(criterion("1. axiom suite", 1, axiom_suite));
    outcomes.push(criterion("2. homotopy restatement", 30, homotopy_restatement));

    let mut census = Vec::new();
    outcomes.push(criterion("3. nerve/Moore round-trip", 60, || {
        census = census::small_crossed(4).map_err(|e| e.to_string())?;
        nerve_moore_round_trip(&census)
    }));

    let mut endos = Vec::new();
    let mut endo_butterflies = Vec::new();
    let mut extensions = Vec::new();
    outcomes.push(criterion("4. fractions are quasi-isomorphisms", 60, || {
        let reps = census::dedupe_crossed(&census, BOUND).map_err(|e| e.to_string())?;
        endos = census::small_endomorphisms(&reps, BOUND).map_err(|e| e.to_string())?;
        endo_butterflies = endos
            .iter()
            .map(from_morphism)
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| e.to_string())?;
        extensions = census::small_extensions(16);
        fractions_are_quasi_isos(&endo_butterflies, &extensions)
    }));

    outcomes.push(criterion("5. derived butterfly laws", 60, || {
        let mut butterflies = endo_butterflies.clone();
        for ext in &extensions {
            butterflies.push(from_extension(ext).map_err(|e| e.to_string())?);
        }
        derived_laws_elementwise(&butterflies)
    }));

    outcomes.push(criterion("6. composition laws", 60, composition_laws));
    outcomes.push(criterion("7. torsor pushforward", 30, torsor_pushforward));
    outcomes.push(criterion("8. cocycle algebra", 30, cocycle_algebra));
    outcomes.push(criterion("9. splitting round-trip", 10, || splitting_round_trip(&endos)));
    outcomes.push(criterion("10. CLI determinism", 60, cli_determinism));

    let mut failed = false;
    for o in &outcomes {
        let within = o.elapsed <= o.limit;
        let status = match (&o.result, within) {
            (Ok(detail), true) => format!("pass  ({:.2?}) {detail}", o.elapsed),
            (Ok(_), false) => {
                format!("FAIL  ({:.2?}) exceeded the {:?} budget", o.elapsed, o.limit)
            }
            (Err(reason), _) => format!("FAIL  ({:.2?}) {reason}", o.elapsed),
        };
        if !(o.result.is_ok() && within) {
            failed = true;
        }
        println!("criterion {:<40} {status}", o.name);
    }
    assert!(!failed, "acceptance criteria failed; see the lines above");
}
