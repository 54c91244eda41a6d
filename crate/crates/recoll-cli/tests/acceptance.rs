//! Acceptance criteria 1-7, one PASS/FAIL line each. Runs without the
//! libtest harness so the lines are always printed.

#[path = "../../recoll/tests/common/mod.rs"]
mod common;

use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use recoll::aalgebra::{build_aalgebra, layer_module};
use recoll::algebra::Algebra;
use recoll::corpus;
use recoll::fpfun;
use recoll::modcat;
use recoll::report::Report;
use recoll::subcat::Subcat;
use recoll::verify::{self, Suite, SubcatChoice, VerifyConfig};

const AALG_LIMIT: Duration = Duration::from_secs(5);
const RECOLLEMENT_LIMIT: Duration = Duration::from_secs(60);
const RESOLUTION_LIMIT: Duration = Duration::from_secs(120);
const MIN_PAIRS: usize = 200;
const MIN_SES: usize = 50;
const MIN_MODULES: usize = 50;
const MIN_COMPLEXES: usize = 100;
const MAX_TERM_DIM: usize = 8;
const MAX_WINDOW: usize = 4;
const MIN_ORACLE: usize = 20;
const ORACLE_P: u64 = 2;
const ORACLE_MAX_DIM: usize = 4;
const SEED: u64 = 2024;

struct Outcome {
    ok: bool,
    detail: String,
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { ok: false, detail: detail.into() }
}

fn algebras() -> Vec<(&'static str, Arc<Algebra>)> {
    corpus::BUNDLED.iter().map(|b| (b.name, b.build(None).expect("bundled algebra builds"))).collect()
}

fn cfg() -> VerifyConfig {
    VerifyConfig { seed: SEED, ..VerifyConfig::default() }
}

fn check_instances(r: &Report, name: &str, min: usize) -> Result<(), String> {
    let c = r.checks.iter().find(|c| c.name == name).ok_or_else(|| format!("{}: no check {name}", r.algebra))?;
    if c.instances < min {
        return Err(format!("{}: {name} ran {} < {min} instances", r.algebra, c.instances));
    }
    Ok(())
}

fn failed_checks(r: &Report) -> String {
    let names: Vec<&str> = r.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
    format!("{} failed: {}", r.algebra, names.join(", "))
}

fn criterion_aalgebra() -> Outcome {
    let mut slowest = Duration::ZERO;
    for (name, alg) in algebras() {
        let t = Instant::now();
        let rep = match verify::aalgebra_suite(&alg, name, &cfg()) {
            Ok(r) => r,
            Err(e) => return fail(format!("{name}: {e}")),
        };
        let elapsed = t.elapsed();
        slowest = slowest.max(elapsed);
        if !rep.passed {
            return fail(failed_checks(&rep));
        }
        if elapsed > AALG_LIMIT {
            return fail(format!("{name}: {elapsed:?} exceeds {AALG_LIMIT:?}"));
        }
        // Independent count of Σ dim Hom(Λ/J^i, Λ/J^j).
        let a = build_aalgebra(&alg).unwrap();
        let layers: Vec<_> = (1..=alg.nilpotency_index()).map(|i| layer_module(&alg, i).unwrap()).collect();
        let total: usize =
            layers.iter().flat_map(|x| layers.iter().map(move |y| common::hom_dim_by_equations(x, y))).sum();
        if total != a.tilde().dim() {
            return fail(format!("{name}: dim of the endomorphism algebra {} but Hom total {total}", a.tilde().dim()));
        }
    }
    let alg = corpus::bundled("dual-numbers").unwrap().build(None).unwrap();
    let a = build_aalgebra(&alg).unwrap();
    let gl = a.gldim(modcat::default_gldim_cap(a.tilde())).unwrap();
    if a.tilde().dim() != 5 || gl != Some(2) {
        return fail(format!("k[x]/(x^2): dim {} gldim {gl:?}, expected 5 and 2", a.tilde().dim()));
    }
    Outcome { ok: true, detail: format!("6 algebras; k[x]/(x^2): dim 5, gldim 2; slowest {slowest:.2?}") }
}

fn criterion_recollement() -> Outcome {
    let mut slowest = Duration::ZERO;
    for (name, alg) in algebras() {
        let t = Instant::now();
        let rep = match verify::recollement_suite(&alg, name, &cfg()) {
            Ok(r) => r,
            Err(e) => return fail(format!("{name}: {e}")),
        };
        let elapsed = t.elapsed();
        slowest = slowest.max(elapsed);
        if !rep.passed {
            return fail(failed_checks(&rep));
        }
        if elapsed > RECOLLEMENT_LIMIT {
            return fail(format!("{name}: {elapsed:?} exceeds {RECOLLEMENT_LIMIT:?}"));
        }
        let counts = [
            ("adjunction-left", MIN_PAIRS),
            ("adjunction-right", MIN_PAIRS),
            ("va-exact", MIN_SES),
            ("restricted-hom-fully-faithful", 1),
            ("unit-counit-sequences", 1),
            ("mod0-orthogonal-to-restricted-hom", 1),
        ];
        for (check, min) in counts {
            if let Err(e) = check_instances(&rep, check, min) {
                return fail(e);
            }
        }
    }
    Outcome { ok: true, detail: format!("6 algebras, {MIN_PAIRS} pairs and {MIN_SES} sequences each, 0 failures; slowest {slowest:.2?}") }
}

fn criterion_covariant() -> Outcome {
    for (name, alg) in algebras() {
        let rep = match verify::covariant_suite(&alg, name, &cfg()) {
            Ok(r) => r,
            Err(e) => return fail(format!("{name}: {e}")),
        };
        if !rep.passed {
            return fail(failed_checks(&rep));
        }
        let classes = alg.radical().map(|r| r.class_count()).unwrap_or(0);
        let counts = [
            ("value-of-tensor", MIN_MODULES),
            ("adjunction-tensor-value", MIN_MODULES),
            ("adjunction-value-kernel", MIN_MODULES),
            ("relative-duality-on-projectives", classes),
            ("relative-duality-for-projectives-subcategory", MIN_MODULES),
        ];
        for (check, min) in counts {
            if let Err(e) = check_instances(&rep, check, min) {
                return fail(e);
            }
        }
    }
    Outcome { ok: true, detail: format!("6 algebras, {MIN_MODULES} left modules each, every indecomposable projective") }
}

fn criterion_resolution() -> Outcome {
    let mut slowest = Duration::ZERO;
    for (name, alg) in algebras() {
        let t = Instant::now();
        let rep = match verify::resolution_suite(&alg, name, &cfg()) {
            Ok(r) => r,
            Err(e) => return fail(format!("{name}: {e}")),
        };
        let elapsed = t.elapsed();
        slowest = slowest.max(elapsed);
        if !rep.passed {
            return fail(failed_checks(&rep));
        }
        if elapsed > RESOLUTION_LIMIT {
            return fail(format!("{name}: {elapsed:?} exceeds {RESOLUTION_LIMIT:?}"));
        }
        let sub = SubcatChoice::RadicalLayers.build(&alg).unwrap();
        let corpus = verify::complex_corpus(&sub, &cfg(), Suite::Resolution.default_corpus_size()).unwrap();
        let total = corpus.projective.len() + corpus.modules.len() + corpus.functors.len();
        if total < MIN_COMPLEXES {
            return fail(format!("{name}: {total} complexes"));
        }
        let module_terms = corpus.projective.iter().chain(&corpus.modules);
        for c in module_terms {
            if c.terms.len() > MAX_WINDOW || c.terms.iter().any(|t| t.dim() > MAX_TERM_DIM) {
                return fail(format!("{name}: complex outside the window or dimension bound"));
            }
        }
        for c in &corpus.functors {
            if c.terms.len() > MAX_WINDOW || c.terms.iter().any(|t| t.zeta_dim() > MAX_TERM_DIM) {
                return fail(format!("{name}: functor complex outside the window or dimension bound"));
            }
        }
        let counts = [
            ("unit-identity", 1),
            ("kernel-characterization", 1),
            ("essential-surjectivity", corpus.modules.len()),
            ("derived-adjunction", 1),
        ];
        for (check, min) in counts {
            if let Err(e) = check_instances(&rep, check, min) {
                return fail(e);
            }
        }
    }
    Outcome { ok: true, detail: format!("6 algebras, {MIN_COMPLEXES} complexes each, 0 failures; slowest {slowest:.2?}") }
}

fn criterion_crepant() -> Outcome {
    let mut self_injective = 0;
    for (name, alg) in algebras() {
        let si = modcat::is_self_injective(&alg).unwrap();
        if si {
            self_injective += 1;
            let rep = match verify::crepant_suite(&alg, name, &cfg()) {
                Ok(r) => r,
                Err(e) => return fail(format!("{name}: {e}")),
            };
            if !rep.passed {
                return fail(failed_checks(&rep));
            }
            if let Err(e) = check_instances(&rep, "restricted-hom-of-injective-is-injective", MIN_SES) {
                return fail(e);
            }
        } else {
            let out = Command::new(env!("CARGO_BIN_EXE_recoll")).args(["verify", "crepant", name]).output().unwrap();
            if out.status.code() != Some(2) {
                return fail(format!("{name}: exit {:?}, expected 2", out.status.code()));
            }
        }
    }
    Outcome { ok: true, detail: format!("{self_injective} self-injective algebras pass; the others exit 2") }
}

fn criterion_oracles() -> Outcome {
    let names = ["dual-numbers", "a2", "truncated-cubic", "square-zero-2"];
    let mut rng = corpus::rng(SEED);
    let (mut homs, mut exts, mut tries) = (0, 0, 0);
    while (homs < MIN_ORACLE || exts < MIN_ORACLE) && tries < 2000 {
        let alg = corpus::bundled(names[tries % names.len()]).unwrap().build(Some(ORACLE_P)).unwrap();
        tries += 1;
        let sub = Subcat::radical_layers(&alg).unwrap();
        let a = corpus::random_functor(&sub, &mut rng, ORACLE_MAX_DIM).unwrap();
        let b = corpus::random_functor(&sub, &mut rng, ORACLE_MAX_DIM).unwrap();
        if a.zeta_dim() == 0 || b.zeta_dim() == 0 {
            continue;
        }
        let f = alg.field();
        let dim = fpfun::fp_hom(&a, &b).unwrap().len();
        if common::log_p(f, common::brute_hom_count(&a, &b)) != dim {
            return fail(format!("Hom mismatch on {:?} -> {:?}", a.d, b.d));
        }
        homs += 1;
        let omega = sub.free_dim(a.top()) - a.zeta_dim();
        if omega * b.zeta_dim() <= 16 {
            let e = fpfun::fp_ext1(&a, &b).unwrap();
            if common::log_p(f, common::brute_ext1_count(&a, &b)) != e {
                return fail(format!("Ext^1 mismatch on {:?} -> {:?}", a.d, b.d));
            }
            exts += 1;
        }
    }
    if homs < MIN_ORACLE || exts < MIN_ORACLE {
        return fail(format!("only {homs} Hom and {exts} Ext^1 instances"));
    }
    Outcome { ok: true, detail: format!("p = {ORACLE_P}: {homs} Hom and {exts} Ext^1 instances agree with enumeration") }
}

fn criterion_determinism() -> Outcome {
    let dir = std::env::temp_dir().join(format!("recoll-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let mut compared = 0;
    for (suite, alg) in [("recollement", "nakayama2"), ("covariant", "truncated-cubic"), ("resolution", "dual-numbers"), ("crepant", "nakayama2")] {
        let mut outputs = Vec::new();
        for run in 0..2 {
            let path = dir.join(format!("{suite}-{run}.json"));
            let status = Command::new(env!("CARGO_BIN_EXE_recoll"))
                .args(["verify", suite, alg, "--seed", "17", "--json"])
                .arg(&path)
                .output()
                .unwrap()
                .status;
            if status.code() != Some(0) {
                return fail(format!("{suite} on {alg}: exit {:?}", status.code()));
            }
            outputs.push(std::fs::read(&path).unwrap());
        }
        if outputs[0] != outputs[1] {
            return fail(format!("{suite} on {alg}: reports differ"));
        }
        compared += 1;
    }
    let _ = std::fs::remove_dir_all(&dir);
    Outcome { ok: true, detail: format!("{compared} suites, two runs each, byte-identical JSON") }
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("A-algebra suite", criterion_aalgebra),
        ("recollement suite", criterion_recollement),
        ("covariant suite", criterion_covariant),
        ("resolution suite", criterion_resolution),
        ("crepancy suite", criterion_crepant),
        ("oracle equivalence", criterion_oracles),
        ("determinism", criterion_determinism),
    ];
    let mut all = true;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let out = std::panic::catch_unwind(run).unwrap_or_else(|_| fail("panicked"));
        let status = if out.ok { "PASS" } else { "FAIL" };
        println!("criterion {}: {status} {name} ({:.1?}): {}", k + 1, t.elapsed(), out.detail);
        all &= out.ok;
    }
    if !all {
        std::process::exit(1);
    }
}
