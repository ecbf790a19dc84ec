//! Executes the commands of a session and collects their results.

use std::collections::BTreeMap;
use std::time::Instant;

use frobkit_core::invariants::{
    blimp_split_check, comp_inequality_check, deviations_from_poincare, discrete_regularity_check, eth_check,
    gorenstein_theorem_check, koszul_homology_bound, kunz_test, radu_andre_test, theorem_main_check, Evidence,
    GrowthPolicy, Outcome, TestVerdict,
};
use frobkit_core::poly::fmt_degree;
use frobkit_core::{
    betti_and_poincare, frobenius_pushforward, frobenius_pushforward_of_module, relative_frobenius, BettiTable,
    FiniteModule, HilbertSeries,
};
use rayon::prelude::*;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::session::{CommandDecl, ModuleArg, Resolved, SessionFile, World};

pub const DEFAULT_CUTOFF: usize = 8;

/// Session-wide defaults; per-command flags take precedence.
#[derive(Clone, Debug)]
pub struct Options {
    pub cutoff: usize,
    pub e: Option<u32>,
    pub delta: Option<f64>,
    pub fail_fast: bool,
    pub jobs: usize,
    pub timings: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            cutoff: default_cutoff(),
            e: None,
            delta: None,
            fail_fast: false,
            jobs: 1,
            timings: false,
        }
    }
}

/// `FROBKIT_DEFAULT_CUTOFF` if set and valid, else 8.
pub fn default_cutoff() -> usize {
    std::env::var("FROBKIT_DEFAULT_CUTOFF")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_CUTOFF)
}

/// One command's result.
#[derive(Clone, Debug, PartialEq)]
pub struct CommandResult {
    pub command: String,
    pub args: Vec<String>,
    /// The detector label, `COMPUTED` for plain computations, or `ERROR`.
    pub verdict: String,
    /// `None` for plain computations and errors.
    pub outcome: Option<Outcome>,
    pub data: Map<String, Value>,
    pub cutoffs: BTreeMap<String, i64>,
    pub ms: Option<f64>,
    /// Betti tables for CSV output, keyed by object name.
    pub tables: Vec<(String, BettiTable)>,
}

impl CommandResult {
    pub fn is_error(&self) -> bool {
        self.verdict == "ERROR"
    }

    fn failed(&self) -> bool {
        self.is_error() || self.outcome == Some(Outcome::Fail)
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("command".into(), json!(self.command));
        m.insert("args".into(), json!(self.args));
        m.insert("verdict".into(), json!(self.verdict));
        m.insert("data".into(), Value::Object(self.data.clone()));
        let cutoffs: Map<String, Value> = self.cutoffs.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
        m.insert("cutoffs".into(), Value::Object(cutoffs));
        m.insert("ms".into(), self.ms.map_or(Value::Null, |v| json!(v)));
        Value::Object(m)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub version: String,
    pub input_sha256: String,
    pub results: Vec<CommandResult>,
}

impl Report {
    /// 0 when everything passed or was computed, 2 on any failure or error,
    /// 3 on any inconclusive result when `strict`.
    pub fn exit_code(&self, strict: bool) -> i32 {
        if self.results.iter().any(CommandResult::failed) {
            2
        } else if strict && self.results.iter().any(|r| r.outcome == Some(Outcome::Inconclusive)) {
            3
        } else {
            0
        }
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

/// Runs every command of the session, in file order.
pub fn execute(session: &SessionFile, world: &World, input: &[u8], opts: &Options) -> Report {
    let cmds: Vec<(&CommandDecl, &Vec<Resolved>)> = session.commands().zip(&world.commands).collect();
    let run = |(c, r): &(&CommandDecl, &Vec<Resolved>)| run_command(c, r, opts);
    let results = if opts.fail_fast {
        let mut out = Vec::new();
        for item in &cmds {
            let res = run(item);
            let stop = res.failed();
            out.push(res);
            if stop {
                break;
            }
        }
        out
    } else if opts.jobs > 1 {
        match rayon::ThreadPoolBuilder::new().num_threads(opts.jobs).build() {
            Ok(pool) => pool.install(|| cmds.par_iter().map(run).collect()),
            Err(_) => cmds.iter().map(run).collect(),
        }
    } else {
        cmds.iter().map(run).collect()
    };
    Report {
        version: env!("CARGO_PKG_VERSION").to_string(),
        input_sha256: sha256_hex(input),
        results,
    }
}

struct Ctx {
    cutoff: usize,
    e: Option<u32>,
    policy: GrowthPolicy,
}

impl Ctx {
    fn e(&self) -> u32 {
        self.e.unwrap_or(1)
    }
}

type Outcomes = (
    String,
    Option<Outcome>,
    Map<String, Value>,
    Vec<(String, BettiTable)>,
    Vec<(String, i64)>,
);

fn run_command(cmd: &CommandDecl, args: &[Resolved], opts: &Options) -> CommandResult {
    let mut policy = GrowthPolicy::default();
    if let Some(d) = cmd.delta.or(opts.delta) {
        policy.delta = d;
    }
    let ctx = Ctx {
        cutoff: cmd.cutoff.unwrap_or(opts.cutoff),
        e: cmd.e.or(opts.e),
        policy,
    };
    let names: Vec<String> = cmd.args.iter().map(|a| a.to_string()).collect();
    let start = Instant::now();
    let computed = dispatch(&cmd.name, args, &names, &ctx);
    let ms = opts.timings.then(|| start.elapsed().as_secs_f64() * 1000.0);
    let (verdict, outcome, data, tables, cutoffs) = match computed {
        Ok((v, o, d, t, c)) => (v, o, d, t, c),
        Err(e) => {
            let mut d = Map::new();
            d.insert("error".into(), json!(e.to_string()));
            ("ERROR".to_string(), None, d, Vec::new(), BTreeMap::new())
        }
    };
    CommandResult {
        command: cmd.name.clone(),
        args: names,
        verdict,
        outcome,
        data,
        cutoffs,
        ms,
        tables,
    }
}

fn dispatch(
    name: &str,
    args: &[Resolved],
    names: &[String],
    ctx: &Ctx,
) -> frobkit_core::Result<(String, Option<Outcome>, Map<String, Value>, Vec<(String, BettiTable)>, BTreeMap<String, i64>)> {
    let n = ctx.cutoff;
    let mut cutoffs = BTreeMap::new();
    let (verdict, outcome, data, tables, extra): Outcomes = match (name, args) {
        ("betti", [Resolved::Module(m)]) => {
            let module = module_value(m, ctx.e())?;
            let (table, p) = betti_and_poincare(&module, n)?;
            cutoffs.insert("cutoff".into(), n as i64);
            let mut d = Map::new();
            d.insert("betti".into(), betti_json(&table));
            d.insert("poincare".into(), json!(p.coefficients()));
            computed(d, vec![(names[0].clone(), table)])
        }
        ("pushforward", [Resolved::Ring(r)]) => {
            let pf = frobenius_pushforward(r, ctx.e())?;
            cutoffs.insert("e".into(), ctx.e() as i64);
            let amb = r.ambient();
            let mut d = Map::new();
            let gens: Vec<String> = pf.generator_monomials().iter().map(|g| amb.fmt_monomial(g)).collect();
            d.insert("generators".into(), json!(gens));
            d.insert("module".into(), module_json(pf.module()));
            computed(d, Vec::new())
        }
        ("relfrob", [Resolved::Map(phi)]) => {
            let rf = relative_frobenius(phi, ctx.e())?;
            cutoffs.insert("e".into(), ctx.e() as i64);
            let mut d = Map::new();
            d.insert("ring".into(), json!(rf.a.to_string()));
            d.insert("module".into(), module_json(rf.module()));
            computed(d, Vec::new())
        }
        ("deviations", [Resolved::Ring(r)]) => {
            let (table, p) = betti_and_poincare(&FiniteModule::residue_field(r), n)?;
            let dev = deviations_from_poincare(&p)?;
            cutoffs.insert("cutoff".into(), n as i64);
            let mut d = Map::new();
            d.insert("deviations".into(), json!(dev.values()));
            d.insert("poincare".into(), json!(p.coefficients()));
            d.insert("complete_intersection".into(), json!(dev.looks_complete_intersection()));
            computed(d, vec![(format!("k({})", names[0]), table)])
        }
        ("hilbert", [Resolved::Module(m)]) => {
            let module = module_value(m, ctx.e())?;
            let h = HilbertSeries::of_module(&module);
            let mut d = Map::new();
            d.insert("series".into(), json!(h.simplified().to_string()));
            let num: Vec<Value> = h.numerator().iter().map(|(deg, c)| json!([fmt_degree(deg), c])).collect();
            d.insert("numerator".into(), Value::Array(num));
            let den: Vec<String> = h.denominator().iter().map(fmt_degree).collect();
            d.insert("denominator".into(), json!(den));
            d.insert("dim_k".into(), h.dimension().map_or(Value::Null, |v| json!(v)));
            computed(d, Vec::new())
        }
        ("test-kunz", [Resolved::Ring(r)]) => verdict_of(kunz_test(r, ctx.e())?, &names[0]),
        ("test-regular" | "test-ci", [Resolved::Map(phi)]) => {
            verdict_of(radu_andre_test(phi, ctx.e(), n, ctx.policy)?, &names[0])
        }
        ("test-gorenstein", [Resolved::Map(phi)]) => verdict_of(gorenstein_theorem_check(phi, ctx.e(), n)?, &names[0]),
        ("check-main", [Resolved::Map(phi)]) => verdict_of(theorem_main_check(phi, ctx.e(), n, ctx.policy)?, &names[0]),
        ("check-eth", [Resolved::Ring(s), Resolved::Module(m)]) => {
            let m = module_value(m, ctx.e())?;
            verdict_of(eth_check(s, &m, ctx.e(), n, ctx.policy)?, &names[1])
        }
        ("check-blimp", [Resolved::Ring(s), Resolved::Module(m)]) => {
            let e = match ctx.e {
                Some(e) => e,
                None => {
                    let c = koszul_homology_bound(s)? as u64;
                    let p = s.characteristic() as u64;
                    (1u32..).find(|&e| p.pow(e) > c).expect("p ≥ 2")
                }
            };
            let m = module_value(m, e)?;
            verdict_of(blimp_split_check(s, &m, e, n)?, &names[1])
        }
        ("check-discrete", [Resolved::Ring(s), Resolved::Module(m)]) => {
            let m = module_value(m, ctx.e())?;
            verdict_of(discrete_regularity_check(s, &m, ctx.e(), n, ctx.policy)?, &names[1])
        }
        ("check-comp", [Resolved::Map(psi), Resolved::Module(m), Resolved::Module(nm)]) => {
            let m = module_value(m, ctx.e())?;
            let nm = module_value(nm, ctx.e())?;
            verdict_of(comp_inequality_check(psi, &m, &nm, n)?, &names[0])
        }
        _ => unreachable!("arguments are validated by the parser"),
    };
    if outcome.is_some() {
        cutoffs.insert("cutoff".into(), n as i64);
    }
    cutoffs.extend(extra);
    Ok((verdict, outcome, data, tables, cutoffs))
}

fn computed(d: Map<String, Value>, tables: Vec<(String, BettiTable)>) -> Outcomes {
    ("COMPUTED".into(), None, d, tables, Vec::new())
}

fn module_value(m: &ModuleArg, e: u32) -> frobkit_core::Result<FiniteModule> {
    match m {
        ModuleArg::Module(m) => Ok(m.clone()),
        ModuleArg::Frobenius(m) => Ok(frobenius_pushforward_of_module(m, e)?.module().clone()),
    }
}

pub fn betti_json(t: &BettiTable) -> Value {
    let entries: Vec<Value> = t
        .entries()
        .map(|((n, d), b)| json!({"n": n, "degree": fmt_degree(&d), "beta": b}))
        .collect();
    json!({"entries": entries, "totals": t.totals()})
}

fn module_json(m: &FiniteModule) -> Value {
    let degrees: Vec<String> = m.degrees().iter().map(fmt_degree).collect();
    json!({
        "generator_degrees": degrees,
        "relations": m.relations().len(),
        "presentation": m.to_string(),
    })
}

fn verdict_of(v: TestVerdict, object: &str) -> Outcomes {
    let mut d = Map::new();
    d.insert("claim".into(), json!(v.claim));
    d.insert("outcome".into(), json!(v.outcome.to_string()));
    let mut tables = Vec::new();
    let evidence: Vec<Value> = v
        .evidence
        .iter()
        .map(|e| match e {
            Evidence::Betti { object: o, table } => {
                tables.push((format!("{object}/{o}"), table.clone()));
                json!({"kind": "betti", "object": o, "betti": betti_json(table)})
            }
            Evidence::Growth { object: o, growth } => json!({
                "kind": "growth",
                "object": o,
                "class": growth.class.label(),
                "window": growth.window,
            }),
            Evidence::Values { name, values } => json!({"kind": "values", "name": name, "values": values}),
            Evidence::Text { name, value } => json!({"kind": "text", "name": name, "value": value}),
        })
        .collect();
    d.insert("evidence".into(), Value::Array(evidence));
    d.insert(
        "witness".into(),
        v.witness
            .as_ref()
            .map_or(Value::Null, |w| json!({"index": w.index, "detail": w.detail})),
    );
    (v.label, Some(v.outcome), d, tables, v.cutoffs)
}
