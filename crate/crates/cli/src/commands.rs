use std::collections::BTreeMap;
use std::io::Read;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

use iqschur::hecke::SchurOracle;
use iqschur::iquantum::{
    binomial_idempotent_check, closing_table, evaluate_integral_combination, express_standard_basis, integral_monomial,
    verify_relations,
};
use iqschur::schur::{build_ajr, oracle_mul, SchurElt};
use iqschur::stabilized::{
    evaluate_combination, express_in_generators, stab_mul, triangular_expand, StabElt, WordFactor, DEFAULT_PEEL_BUDGET,
};
use iqschur::tables::{formula_product, mul_table, MulTable, TableBasis, TableRoute};
use iqschur::tensor::{commutant_dimension, commutation_check, hecke_module_check, intertwiner_check};
use iqschur::theta::{enumerate_xi, Composition, SignedWeight, ThetaMatrix};
use iqschur::RatFunc;

use crate::cache::{Cache, Lookup, TableKey};
use crate::report::Report;
use crate::{Cli, CliError, DumpVerb, EnumerateVerb, JobConfig, Verb, VerifyVerb};

type Result<T> = std::result::Result<T, CliError>;

/// A finished verb. `raw` carries bytes destined for stdout verbatim
/// (a table dump without `--out`).
pub struct Outcome {
    pub report: Report,
    pub raw: Option<Vec<u8>>,
}

impl From<Report> for Outcome {
    fn from(report: Report) -> Self {
        Self { report, raw: None }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let cfg = &cli.config;
    match cfg.threads {
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| CliError::Input(format!("thread pool: {e}")))?;
            pool.install(|| dispatch(cfg, &cli.verb))
        }
        None => dispatch(cfg, &cli.verb),
    }
}

fn dispatch(cfg: &JobConfig, verb: &Verb) -> Result<Outcome> {
    match verb {
        Verb::Mul { left, right, route, basis } => {
            mul(cfg, left, right, (*route).into(), (*basis).into()).map(Into::into)
        }
        Verb::Ajr { a, j, r } => ajr(cfg, a, j, *r).map(Into::into),
        Verb::StabMul { left, right } => stab_mul_verb(cfg, left, right).map(Into::into),
        Verb::ExpandMonomial { a, j } => expand_monomial(cfg, a, j).map(Into::into),
        Verb::Expand { a, j } => expand(cfg, a, j.as_deref()).map(Into::into),
        Verb::Verify { what } => verify(cfg, what).map(Into::into),
        Verb::Enumerate { what: EnumerateVerb::Xi { rank } } => enumerate(cfg, rank.n, rank.r).map(Into::into),
        Verb::Dump { what: DumpVerb::Table { rank, basis, route, out } } => {
            cfg.guard(rank.n, rank.r)?;
            let key = TableKey { n: rank.n, r: rank.r, basis: (*basis).into(), route: (*route).into() };
            let (lookup, bytes) = table_bytes(cfg, &key)?;
            let mut report = Report::new("dump table");
            report.data = Some(json!({ "key": key, "cache": lookup, "bytes": bytes.len() }));
            match out {
                Some(path) => {
                    std::fs::write(path, &bytes)?;
                    report.line(format!(
                        "wrote {} bytes to {} (cache {})",
                        bytes.len(),
                        path.display(),
                        lookup_word(lookup)
                    ));
                    Ok(report.into())
                }
                None => Ok(Outcome { report, raw: Some(bytes) }),
            }
        }
    }
}

fn lookup_word(l: Lookup) -> &'static str {
    match l {
        Lookup::Hit => "hit",
        Lookup::Miss => "miss",
        Lookup::Invalidated => "invalidated",
    }
}


fn read_arg(arg: &str) -> Result<String> {
    let t = arg.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        return Ok(arg.to_string());
    }
    if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::Input(format!("stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(arg).map_err(|e| CliError::Input(format!("{arg}: {e}")))
}

fn parse_json<T: DeserializeOwned>(arg: &str, what: &str) -> Result<T> {
    let s = read_arg(arg)?;
    serde_json::from_str(&s).map_err(|e| CliError::Input(format!("malformed {what}: {e}")))
}

fn parse_weight(s: &str, n: usize) -> Result<SignedWeight> {
    let s = s.trim().trim_start_matches('[').trim_end_matches(']');
    if s.is_empty() {
        return Ok(SignedWeight::zero(n));
    }
    let parts: Vec<i64> = s
        .split(',')
        .map(|p| p.trim().parse::<i64>().map_err(|e| CliError::Input(format!("weight entry {p:?}: {e}"))))
        .collect::<Result<_>>()?;
    if parts.len() == n + 1 {
        Ok(SignedWeight::from_reduced(parts)?)
    } else if parts.len() == 2 * n + 1 {
        Ok(SignedWeight::from_raw(&parts)?)
    } else {
        Err(CliError::Input(format!(
            "weight needs {} or {} entries for n = {n}, got {}",
            n + 1,
            2 * n + 1,
            parts.len()
        )))
    }
}

fn matrix_r(a: &ThetaMatrix) -> usize {
    ((a.sum() - 1) / 2) as usize
}


fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("values serialize")
}

fn schur_lines(x: &SchurElt) -> Vec<String> {
    if x.is_zero() {
        return vec!["0".into()];
    }
    x.terms().map(|(a, c)| format!("({c}) {a}")).collect()
}

fn factor_text(f: &WordFactor) -> String {
    match f {
        WordFactor::Diag(j) => format!("O{:?}", j.reduced()),
        WordFactor::Raise { h, m } => format!("E{h}^({m})"),
        WordFactor::Lower { h, m } => format!("F{h}^({m})"),
    }
}

fn word_text(fs: &[WordFactor]) -> String {
    if fs.is_empty() {
        return "1".into();
    }
    fs.iter().map(factor_text).collect::<Vec<_>>().join(" ")
}

#[derive(Serialize)]
struct Term<'a> {
    #[serde(rename = "A")]
    a: &'a ThetaMatrix,
    c: &'a RatFunc,
}


fn mul(cfg: &JobConfig, left: &str, right: &str, route: TableRoute, basis: TableBasis) -> Result<Report> {
    let x: SchurElt = parse_json(left, "left element")?;
    let y: SchurElt = parse_json(right, "right element")?;
    if (x.n(), x.r()) != (y.n(), y.r()) {
        return Err(CliError::Input(format!("elements live in S({}, {}) and S({}, {})", x.n(), x.r(), y.n(), y.r())));
    }
    cfg.guard(x.n(), x.r())?;
    let p = match route {
        TableRoute::Oracle => oracle_mul(&SchurOracle::new(x.n(), x.r()), &x, &y)?,
        TableRoute::Formula => {
            let mut out = SchurElt::zero(x.n(), x.r());
            for (a, ca) in x.terms() {
                for (b, cb) in y.terms() {
                    if a.co() == b.ro() {
                        out.add_scaled(&formula_product(a, b)?, &(ca * cb));
                    }
                }
            }
            out
        }
    };
    let mut report = Report::new("mul");
    match basis {
        TableBasis::Normalized => {
            report.lines = schur_lines(&p);
            report.data = Some(to_value(&p));
        }
        TableBasis::Standard => {
            let e = p.to_e_basis()?;
            report.lines = e.iter().map(|(a, c)| format!("({c}) e{a}")).collect();
            let terms: Vec<Term> = e.iter().map(|(a, c)| Term { a, c }).collect();
            report.data = Some(json!({ "n": p.n(), "r": p.r(), "basis": "standard", "terms": terms }));
        }
    }
    Ok(report)
}

fn ajr(cfg: &JobConfig, a: &str, j: &str, r: usize) -> Result<Report> {
    let a: ThetaMatrix = parse_json(a, "matrix")?;
    cfg.guard(a.n(), r)?;
    let j = parse_weight(j, a.n())?;
    let x = build_ajr(&a, &j, r)?;
    let mut report = Report::new("ajr");
    report.lines = schur_lines(&x);
    Ok(report.with_data(to_value(&x)))
}

fn stab_mul_verb(cfg: &JobConfig, left: &str, right: &str) -> Result<Report> {
    let x: StabElt = parse_json(left, "left element")?;
    let y: StabElt = parse_json(right, "right element")?;
    cfg.guard(x.n(), 0)?;
    let p = stab_mul(&x, &y)?;
    let mut report = Report::new("stab-mul");
    report.line(p.to_string());
    Ok(report.with_data(to_value(&p)))
}

fn expand_monomial(cfg: &JobConfig, a: &str, j: &str) -> Result<Report> {
    let a: ThetaMatrix = parse_json(a, "matrix")?;
    cfg.guard(a.n(), 0)?;
    let j = parse_weight(j, a.n())?;
    let t = triangular_expand(&a, &j)?;
    let mut report = Report::new("expand-monomial");
    report.line(t.value.to_string());
    report.check("leading coefficient is 1", t.leading_is_one, "");
    report.check("lower terms strictly below in the preorder", t.lower_terms_strictly_below, "");
    report.check("lower terms have smaller norm", t.lower_norms_smaller, "");
    Ok(report.with_data(to_value(&t)))
}

fn expand(cfg: &JobConfig, a: &str, j: Option<&str>) -> Result<Report> {
    let a: ThetaMatrix = parse_json(a, "matrix")?;
    match j {
        Some(j) => {
            cfg.guard(a.n(), 0)?;
            let j = parse_weight(j, a.n())?;
            let x = StabElt::basis(a.clone(), j)?;
            let combo = express_in_generators(&x, DEFAULT_PEEL_BUDGET)?;
            let back = evaluate_combination(a.n(), &combo)?;
            let mut report = Report::new("expand");
            report.lines = combo.iter().map(|(c, w)| format!("({c}) {}", word_text(&w.factors))).collect();
            report.check("combination re-evaluates to the input", back == x, format!("{} words", combo.len()));
            let terms: Vec<Value> = combo.iter().map(|(c, w)| json!({ "c": c, "word": w })).collect();
            Ok(report.with_data(json!({ "element": x, "combination": terms })))
        }
        None => {
            let r = matrix_r(&a);
            cfg.guard(a.n(), r)?;
            let budget = 100 * enumerate_xi(a.n(), r as i64).len();
            let combo = express_standard_basis(&a, budget)?;
            let back = evaluate_integral_combination(a.n(), r, &combo)?;
            let mut report = Report::new("expand");
            report.lines = combo
                .iter()
                .map(|(c, w)| format!("({c}) binom{:?} {}", w.lambda.parts(), word_text(&w.monomial.factors)))
                .collect();
            report.check(
                "combination re-evaluates to [A]",
                back == SchurElt::basis(a.n(), r, a.clone())?,
                format!("{} integral monomials", combo.len()),
            );
            let terms: Vec<Value> = combo.iter().map(|(c, w)| json!({ "c": c, "word": w })).collect();
            Ok(report.with_data(json!({ "matrix": a, "r": r, "combination": terms })))
        }
    }
}

fn enumerate(cfg: &JobConfig, n: usize, r: usize) -> Result<Report> {
    cfg.guard(n, r)?;
    let xi = enumerate_xi(n, r as i64);
    let mut report = Report::new("enumerate xi");
    report.line(format!("{} matrices for (n, r) = ({n}, {r})", xi.len()));
    report.lines.extend(xi.iter().map(ToString::to_string));
    Ok(report.with_data(json!({ "n": n, "r": r, "count": xi.len(), "matrices": xi })))
}


fn table_json(t: &MulTable) -> Vec<u8> {
    let mut bytes = serde_json::to_vec_pretty(t).expect("tables serialize");
    bytes.push(b'\n');
    bytes
}

/// Serialized table for `key`, from the cache when possible.
fn table_bytes(cfg: &JobConfig, key: &TableKey) -> Result<(Lookup, Vec<u8>)> {
    let compute = || -> Result<Vec<u8>> { Ok(table_json(&mul_table(key.n, key.r, key.route, key.basis)?)) };
    if cfg.no_cache {
        return Ok((Lookup::Miss, compute()?));
    }
    let cache = Cache::open(cfg.cache_dir())?;
    let (lookup, hit) = cache.get(key)?;
    if let Some(bytes) = hit {
        return Ok((lookup, bytes));
    }
    let bytes = compute()?;
    cache.put(key, &bytes)?;
    Ok((lookup, bytes))
}

fn cached_table(cfg: &JobConfig, key: &TableKey) -> Result<(Lookup, MulTable)> {
    let (lookup, bytes) = table_bytes(cfg, key)?;
    let t = serde_json::from_slice(&bytes).map_err(|e| CliError::Input(format!("cached table {}: {e}", key.id())))?;
    Ok((lookup, t))
}


fn verify(cfg: &JobConfig, what: &VerifyVerb) -> Result<Report> {
    match what {
        VerifyVerb::Relations { n } => {
            cfg.guard(*n, 0)?;
            let mut report = Report::new("verify relations");
            let checks = verify_relations(*n)?;
            let mut families: BTreeMap<&str, (usize, Vec<String>)> = BTreeMap::new();
            for c in &checks {
                let e = families.entry(c.family).or_default();
                e.0 += 1;
                if !c.holds {
                    e.1.push(c.instance.clone());
                }
            }
            // Report families in the order they are generated.
            let mut order: Vec<&str> = Vec::new();
            for c in &checks {
                if !order.contains(&c.family) {
                    order.push(c.family);
                }
            }
            for fam in order {
                let (count, failed) = &families[fam];
                let detail = if failed.is_empty() {
                    format!("{count} instances")
                } else {
                    format!("{} of {count} fail: {}", failed.len(), failed.join("; "))
                };
                report.check(fam, failed.is_empty(), detail);
            }
            for id in closing_table() {
                report.check(format!("closing coefficient {}", id.term), id.holds(), "");
            }
            let instances: Vec<Value> = checks
                .iter()
                .map(|c| json!({ "family": c.family, "instance": c.instance, "holds": c.holds }))
                .collect();
            Ok(report.with_data(json!({ "n": n, "instances": instances })))
        }
        VerifyVerb::Formulas { rank, basis } => {
            cfg.guard(rank.n, rank.r)?;
            let key = TableKey { n: rank.n, r: rank.r, basis: (*basis).into(), route: TableRoute::Oracle };
            let (lookup, oracle) = cached_table(cfg, &key)?;
            let formula = mul_table(rank.n, rank.r, TableRoute::Formula, (*basis).into())?;
            let mut report = Report::new("verify formulas");
            report.check(
                "basis enumerations agree",
                oracle.basis == formula.basis,
                format!("{} matrices", oracle.basis.len()),
            );
            let mismatched: Vec<String> = oracle
                .entries
                .iter()
                .zip(&formula.entries)
                .filter(|(o, f)| o != f)
                .map(|(o, _)| format!("({}, {})", o.left, o.right))
                .collect();
            let same_shape = oracle.entries.len() == formula.entries.len();
            let detail = if mismatched.is_empty() {
                format!("{} products", oracle.entries.len())
            } else {
                format!("mismatch at {}", mismatched.join(", "))
            };
            report.check("formula products equal oracle products", same_shape && mismatched.is_empty(), detail);
            Ok(report.with_data(
                json!({ "n": rank.n, "r": rank.r, "oracle_cache": lookup, "products": oracle.entries.len() }),
            ))
        }
        VerifyVerb::Duality { rank, trials, exact } => {
            cfg.guard(rank.n, rank.r)?;
            let (n, r) = (rank.n, rank.r);
            let mut report = Report::new("verify duality");
            let hecke = hecke_module_check(n, r)?;
            report.check("tensor space is a Hecke module", hecke.is_empty(), hecke.join("; "));
            let comm = commutation_check(n, r)?;
            let detail = if comm.passed() { format!("{} pairs", comm.pairs_checked) } else { comm.failures.join("; ") };
            report.check("i-quantum action commutes with the Hecke action", comm.passed(), detail);
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let dim = commutant_dimension(n, r, *trials, *exact, &mut rng)?;
            let xi = enumerate_xi(n, r as i64).len();
            report.check("specializations agree", dim.agree, format!("{:?}", dim.specializations));
            report.check("commutant dimension equals |Xi|", dim.dimension == xi, format!("{} vs {xi}", dim.dimension));
            Ok(report.with_data(json!({ "commutation": comm, "commutant": dim, "xi": xi, "seed": cfg.seed })))
        }
        VerifyVerb::Intertwiner { rank } => {
            cfg.guard(rank.n, rank.r)?;
            let rep = intertwiner_check(rank.n, rank.r)?;
            let mut report = Report::new("verify intertwiner");
            let detail = if rep.passed() { format!("{} cases", rep.cases_checked) } else { rep.failures.join("; ") };
            report.check("eta intertwines the two actions", rep.passed(), detail);
            Ok(report.with_data(to_value(&rep)))
        }
        VerifyVerb::Integrality { rank } => {
            cfg.guard(rank.n, rank.r)?;
            let mut report = Report::new("verify integrality");
            for a in enumerate_xi(rank.n, rank.r as i64) {
                let e = integral_monomial(&a)?;
                let ok = e.leading_is_one && e.lower_terms_strictly_below && e.integral;
                let detail = if ok {
                    String::new()
                } else {
                    format!(
                        "leading {}, triangular {}, integral {}",
                        e.leading_is_one, e.lower_terms_strictly_below, e.integral
                    )
                };
                report.check(format!("integral monomial {a}"), ok, detail);
            }
            Ok(report)
        }
        VerifyVerb::Idempotents { rank } => {
            cfg.guard(rank.n, rank.r)?;
            let mut report = Report::new("verify idempotents");
            for l in Composition::all(rank.n, rank.r as i64) {
                let ok = binomial_idempotent_check(&l)?;
                report.check(format!("binomial product for {:?}", l.parts()), ok, "");
            }
            Ok(report)
        }
    }
}
