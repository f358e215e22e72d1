//! Command-line front end. [`run`] parses argv and returns the exit code with
//! the full output, so the binary is a thin wrapper and tests can call it
//! directly.
//!
//! Exit codes: 0 success, 2 invalid invocation or parameters, 3 budget
//! exceeded, 4 verification failure (the output carries a witness), 1 for
//! internal errors.

pub mod suites;

use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use indexmap::IndexMap;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cohomology::{
    chi_bar, cocycle_from_mu, cocycle_identity_check, h2_log, h2_log_from_x, CentralExtension, CheckMode, MuContext,
    MuFamily, MuParameters,
};
use crate::error::{Error, Result};
use crate::families::{self, base_family, kernel_generators, ladder_series, FamilyId, FamilyTag};
use crate::oracle::{brute_h2_stable, BRUTE_BUDGET};
use crate::pcgroup::{default_budget, PcPresentation};
use crate::reps::{
    irr_chain, match_class, proj_from_repgroup, verify_projective_rep, IrrSet, MonomialRep, ProjCheck, ProjVerdict,
    ProjectiveRep, RootExp,
};
use suites::{complete_ladder, corrupt_at_generators, Injection, Session, SuiteOptions};

#[derive(Parser, Debug)]
#[command(name = "projrep", version, about = "Exact projective representations of special p-groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    /// Enumeration budget: an element count, `3^k`, or `default`.
    #[arg(long, global = true)]
    budget: Option<String>,
    #[arg(long, default_value_t = 7, global = true)]
    seed: u64,
    /// Write the output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Args, Debug, Clone)]
struct FamilyArgs {
    #[arg(long)]
    family: String,
    #[arg(long, default_value_t = 3)]
    p: u32,
    #[arg(long)]
    d: Option<u32>,
    #[arg(long)]
    m: Option<u32>,
}

impl FamilyArgs {
    fn id(&self) -> Result<FamilyId> {
        FamilyId::new(
            FamilyTag::from_cli_name(&self.family)?,
            self.p,
            self.d.unwrap_or(3),
            self.m.unwrap_or(1),
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum GroupAction {
    Info,
    Presentation,
    Structure,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum InjectArg {
    Relation,
    Cocycle,
    Matrix,
}

impl From<InjectArg> for Injection {
    fn from(i: InjectArg) -> Self {
        match i {
            InjectArg::Relation => Injection::Relation,
            InjectArg::Cocycle => Injection::Cocycle,
            InjectArg::Matrix => Injection::Matrix,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a family member and describe it.
    Group {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(value_enum, default_value = "info")]
        action: GroupAction,
    },
    /// Order of the Schur multiplier.
    H2 {
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// Cocycle from μ-parameters (a JSON file, or random from the seed), checked.
    Cocycle {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        mu: Option<PathBuf>,
        #[arg(long, value_enum)]
        inject: Option<InjectArg>,
    },
    /// Irreducible representations by the ladder.
    Irr {
        #[command(flatten)]
        family: FamilyArgs,
        /// Include the generator matrices.
        #[arg(long)]
        matrices: bool,
        #[arg(long, value_enum)]
        inject: Option<InjectArg>,
    },
    /// Projective representations of the base pulled back from a representation group.
    Proj {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        mu: Option<PathBuf>,
        #[arg(long, value_enum)]
        inject: Option<InjectArg>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 3)]
        p: u32,
        #[arg(long, default_value_t = 3)]
        d: u32,
        #[arg(long, value_enum)]
        inject: Option<InjectArg>,
    },
}

/// Successful output, or a verification failure whose report is still printed.
enum Outcome {
    Ok(String),
    Failed(String),
}

/// Runs the CLI on `argv` (including the program name).
pub fn run<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => (0, e.to_string()),
                _ => {
                    let reason = e.to_string();
                    let first = reason.lines().next().unwrap_or("").trim_start_matches("error: ").to_string();
                    (2, error_line("usage", &first))
                }
            };
        }
    };
    let result = match cli.jobs {
        Some(0) => Err(Error::InvalidParameters("--jobs must be positive".into())),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(&cli)),
            Err(e) => Err(Error::Internal(e.to_string())),
        },
        None => dispatch(&cli),
    };
    let (code, text) = match result {
        Ok(Outcome::Ok(s)) => (0, s),
        Ok(Outcome::Failed(s)) => (4, s),
        Err(e) => return (exit_code(&e), error_line(error_kind(&e), &e.to_string())),
    };
    let text = if text.ends_with('\n') { text } else { text + "\n" };
    match &cli.out {
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => (code, String::new()),
            Err(e) => (2, error_line("io", &format!("{}: {e}", path.display()))),
        },
        None => (code, text),
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Budget { .. } => "budget",
        Error::InvalidParameters(_) | Error::Unsupported(_) | Error::Parse(_) | Error::InvalidPresentation(_) => {
            "invalid"
        }
        Error::Internal(_) | Error::StepLimit => "internal",
        _ => "verification",
    }
}

fn exit_code(e: &Error) -> i32 {
    match error_kind(e) {
        "budget" => 3,
        "invalid" => 2,
        "internal" => 1,
        _ => 4,
    }
}

fn error_line(kind: &str, reason: &str) -> String {
    let reason = reason.replace('\n', " ");
    format!("{}\n", json!({"error": kind, "reason": reason}))
}

fn parse_budget(s: Option<&str>) -> Result<u128> {
    let Some(s) = s else { return Ok(default_budget()) };
    let s = s.trim();
    if s == "default" {
        return Ok(default_budget());
    }
    let bad = || Error::InvalidParameters(format!("bad budget {s:?}"));
    if let Some(k) = s.strip_prefix("3^") {
        let k: u32 = k.parse().map_err(|_| bad())?;
        return 3u128.checked_pow(k).ok_or_else(bad);
    }
    s.parse().map_err(|_| bad())
}

fn to_json(v: &impl Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    let budget = parse_budget(cli.budget.as_deref())?;
    match &cli.command {
        Command::Group { family, action } => group(cli, &family.id()?, *action, budget),
        Command::H2 { family } => h2(cli, &family.id()?),
        Command::Cocycle { family, mu, inject } => cocycle(cli, &family.id()?, mu.as_ref(), *inject),
        Command::Irr {
            family,
            matrices,
            inject,
        } => irr(cli, &family.id()?, *matrices, *inject, budget),
        Command::Proj { family, mu, inject } => proj(cli, &family.id()?, mu.as_ref(), *inject, budget),
        Command::Verify { suite, p, d, inject } => {
            if !suites::suite_names().any(|s| s == suite) && !suites::CRITERIA.iter().any(|c| c.0 == suite) {
                return Err(Error::InvalidParameters(format!("unknown suite {suite:?}")));
            }
            let opts = SuiteOptions {
                p: *p,
                d: *d,
                seed: cli.seed,
                budget,
                inject: inject.map(Into::into),
            };
            verify(cli, Session::new(opts), suite)
        }
    }
}

fn tsv(rows: impl IntoIterator<Item = Vec<String>>) -> String {
    rows.into_iter().map(|r| r.join("\t") + "\n").collect()
}

fn group(cli: &Cli, f: &FamilyId, action: GroupAction, budget: u128) -> Result<Outcome> {
    let g = families::build(f)?;
    let report = g.consistency_check();
    if !report.is_consistent() {
        return Ok(Outcome::Failed(error_line(
            "verification",
            &format!("inconsistent presentation at {}", report.failure.as_deref().unwrap_or("?")),
        )));
    }
    let out = match action {
        GroupAction::Presentation => g.to_json_string(),
        GroupAction::Structure => to_json(&g.structure(budget)?.summary()),
        GroupAction::Info => {
            let mut counts: IndexMap<String, usize> = IndexMap::new();
            for gen in g.generators() {
                *counts.entry(gen.name[..1].to_string()).or_default() += 1;
            }
            counts.sort_keys();
            let order = g.group_order()?;
            match cli.format {
                Format::Json => to_json(&json!({
                    "family": f.to_string(),
                    "prime": f.p,
                    "order": order,
                    "order_log_p": g.order_log_p(),
                    "generators": counts,
                    "consistent": true,
                })),
                Format::Tsv => {
                    let mut rows = vec![
                        vec!["family".into(), f.to_string()],
                        vec!["order".into(), order.to_string()],
                        vec!["order_log_p".into(), g.order_log_p().to_string()],
                    ];
                    rows.extend(counts.iter().map(|(k, v)| vec![format!("generators.{k}"), v.to_string()]));
                    tsv(rows)
                }
            }
        }
    };
    Ok(Outcome::Ok(out))
}

fn h2(cli: &Cli, f: &FamilyId) -> Result<Outcome> {
    let g = families::build(f)?;
    let (log, method) = match h2_log(f) {
        Ok(k) => {
            if let Ok(x) = h2_log_from_x(&g) {
                if x != k {
                    return Err(Error::Certification(format!("closed form 3^{k} but X gives 3^{x}")));
                }
            }
            (k, "closed-form")
        }
        Err(_) => match h2_log_from_x(&g) {
            Ok(k) => (k, "x-subspace"),
            Err(_) if g.group_order()? <= BRUTE_BUDGET => {
                (brute_h2_stable(&f.to_string(), &g, BRUTE_BUDGET)?.0.corrected_h2_log, "brute-force")
            }
            Err(_) => {
                return Err(Error::Unsupported(format!("no Schur multiplier method for {f}")));
            }
        },
    };
    let out = match cli.format {
        Format::Json => to_json(&json!({"family": f.to_string(), "h2_log_p": log, "method": method})),
        Format::Tsv => tsv([vec!["family".into(), f.to_string()], vec!["h2_log_p".into(), log.to_string()]]),
    };
    Ok(Outcome::Ok(out))
}

fn read_mu(path: &PathBuf, family: MuFamily, f: &FamilyId) -> Result<MuParameters> {
    let s = std::fs::read_to_string(path).map_err(|e| Error::InvalidParameters(format!("{}: {e}", path.display())))?;
    let mu = MuParameters::from_json_str(&s)?;
    if mu.family != family || mu.p != f.p || mu.d != f.d {
        return Err(Error::InvalidParameters(format!("μ file does not describe {f}")));
    }
    Ok(mu)
}

fn cocycle(cli: &Cli, f: &FamilyId, mu: Option<&PathBuf>, inject: Option<InjectArg>) -> Result<Outcome> {
    let ctx = MuContext::new(f)?;
    let mu = match mu {
        Some(path) => read_mu(path, ctx.family, f)?,
        None => {
            use rand::SeedableRng;
            MuParameters::random(ctx.family, f.p, f.d, &mut rand_chacha::ChaCha8Rng::seed_from_u64(cli.seed))
        }
    };
    let mut a = cocycle_from_mu(&ctx, &mu)?;
    if inject == Some(InjectArg::Cocycle) {
        a = corrupt_at_generators(&a, &ctx.group);
    }
    let gens = cocycle_identity_check(&a, &ctx.group, CheckMode::Generators)?;
    let sampled = cocycle_identity_check(
        &a,
        &ctx.group,
        CheckMode::Sampled {
            n: 10_000,
            seed: cli.seed,
        },
    )?;
    let pass = gens.pass && sampled.pass;
    let functional = chi_bar(&a, &ctx.group)?;
    let chi: IndexMap<String, u64> = functional
        .iter()
        .enumerate()
        .filter(|(_, &v)| v != 0)
        .map(|(i, &v)| (ctx.space().basis_label(i), v))
        .collect();
    let witness = gens
        .witness
        .or(sampled.witness)
        .map(|w| w.iter().map(|e| ctx.group.format_element(e)).collect::<Vec<_>>());
    let out = match cli.format {
        Format::Json => to_json(&json!({
            "family": f.to_string(),
            "mu": mu.to_json(),
            "modulus": a.modulus(),
            "identity": {"pass": pass, "generator_triples": gens.checked, "sampled_triples": sampled.checked, "witness": witness},
            "chi_bar": chi,
        })),
        Format::Tsv => {
            let mut rows = vec![vec!["pass".into(), pass.to_string()]];
            if let Some(w) = &witness {
                rows.push(vec!["witness".into(), w.join(" ")]);
            }
            rows.extend(chi.iter().map(|(k, v)| vec![k.clone(), v.to_string()]));
            tsv(rows)
        }
    };
    Ok(if pass { Outcome::Ok(out) } else { Outcome::Failed(out) })
}

/// Exponents of the scalars by which `rho` acts on the central elements `at`.
fn central_character(g: &PcPresentation, rho: &MonomialRep, at: &[Vec<u32>]) -> Result<IndexMap<String, u32>> {
    at.iter()
        .map(|e| Ok((g.format_element(e), rho.central_value(e)?.value)))
        .collect()
}

fn central_elements(f: &FamilyId, g: &PcPresentation, budget: u128) -> Result<Vec<Vec<u32>>> {
    match kernel_generators(f, g) {
        Ok(k) => Ok(k.into_iter().map(|i| g.generator(i).into_exponents()).collect()),
        Err(_) => {
            let center = g
                .structure(budget)?
                .center
                .ok_or_else(|| Error::budget("center", g.group_order().unwrap_or(u128::MAX), budget))?;
            Ok(center.raw_generators().cloned().collect())
        }
    }
}

fn irr(cli: &Cli, f: &FamilyId, matrices: bool, inject: Option<InjectArg>, budget: u128) -> Result<Outcome> {
    let g = families::build(f)?;
    let mut set: IrrSet = complete_ladder(f, &g, budget)?;
    if inject == Some(InjectArg::Matrix) {
        if let Some(r) = set.reps.last_mut() {
            suites::corrupt_matrix(r);
        }
    }
    let mut violation = None;
    for (i, r) in set.reps.iter().enumerate() {
        if let Err(e) = r.verify_relations(&g) {
            violation = Some(format!("irreducible #{i}: {e}"));
            break;
        }
    }
    let out = match cli.format {
        Format::Tsv => {
            let mut rows = vec![vec!["degree".to_string(), "multiplicity".to_string()]];
            rows.extend(set.degree_profile().iter().map(|(d, m)| vec![d.to_string(), m.to_string()]));
            tsv(rows)
        }
        Format::Json => {
            let centre = central_elements(f, &g, budget)?;
            let names: Vec<String> = set.domain.gens.iter().map(|&i| g.generators()[i].name.clone()).collect();
            let irreducibles = set
                .reps
                .iter()
                .map(|r| {
                    let mut o = serde_json::Map::new();
                    o.insert("degree".into(), json!(r.degree()));
                    o.insert("central_character".into(), json!(central_character(&g, r, &centre)?));
                    if let Some(l) = &r.inducing {
                        let gens: Vec<String> = l.subgroup.raw_generators().map(|e| g.format_element(e)).collect();
                        o.insert("inducing_subgroup_gens".into(), json!(gens));
                    }
                    if matrices {
                        let m: IndexMap<&str, Value> = names
                            .iter()
                            .zip(&r.matrices)
                            .map(|(n, m)| (n.as_str(), json!({"perm": m.perm, "exps": m.exps})))
                            .collect();
                        o.insert("matrices".into(), json!(m));
                    }
                    Ok(Value::Object(o))
                })
                .collect::<Result<Vec<_>>>()?;
            to_json(&json!({
                "group": f.to_string(),
                "order": g.group_order()?,
                "root_of_unity_order": set.q,
                "degree_profile": set.degree_profile(),
                "irreducibles": irreducibles,
                "relation_violation": violation,
            }))
        }
    };
    Ok(if violation.is_none() {
        Outcome::Ok(out)
    } else {
        Outcome::Failed(out)
    })
}

fn check_mode(base: &PcPresentation, seed: u64) -> Result<ProjCheck> {
    Ok(if base.group_order()? <= 729 {
        ProjCheck::Exhaustive
    } else {
        ProjCheck::Sampled { n: 10_000, seed }
    })
}

fn verdict_json(base: &PcPresentation, v: &ProjVerdict) -> Value {
    json!({
        "pass": v.pass,
        "checked": v.checked,
        "witness": v.witness.as_ref().map(|(x, y)| [base.format_element(x), base.format_element(y)]),
    })
}

fn inject_proj(pr: ProjectiveRep, inject: Option<InjectArg>) -> ProjectiveRep {
    match inject {
        Some(InjectArg::Matrix) => pr.with_corrupted_matrix(1, 1),
        Some(InjectArg::Cocycle) => {
            let (x, y) = (pr.base.element_at(1), pr.base.element_at(2));
            let c = pr.cocycle.corrupted(&pr.base, &x, &y, 1);
            pr.with_cocycle(c)
        }
        _ => pr,
    }
}

fn proj(cli: &Cli, f: &FamilyId, mu: Option<&PathBuf>, inject: Option<InjectArg>, budget: u128) -> Result<Outcome> {
    let base_f = base_family(f).ok_or_else(|| Error::Unsupported(format!("{f} is not a representation group family")))?;
    let ext = Arc::new(CentralExtension::from_family(f)?);
    let ctx = MuContext::new(&base_f).ok();
    let mut entries = Vec::new();
    let mut pass = true;
    let mut push = |chi: &[RootExp], rho: &MonomialRep, want: Option<&MuParameters>| -> Result<()> {
        let pr = inject_proj(proj_from_repgroup(&ext, rho, chi, budget)?, inject);
        let v = verify_projective_rep(&pr, check_mode(&ext.base, cli.seed)?)?;
        let matched = match (&ctx, v.pass) {
            (Some(ctx), true) if ext.base.group_order()? <= budget => Some(match_class(ctx, &pr.cocycle, budget)?),
            _ => None,
        };
        let agrees = match (want, &matched) {
            (Some(w), Some(m)) => w == m,
            _ => true,
        };
        pass &= v.pass && agrees;
        let key: IndexMap<String, u32> = ext
            .kernel
            .iter()
            .zip(chi)
            .map(|(&k, c)| (ext.rep.generators()[k].name.clone(), c.lift(pr.cocycle.modulus() as u32).value))
            .collect();
        entries.push(json!({
            "root_of_unity_order": pr.cocycle.modulus(),
            "kernel_character": key,
            "degree": pr.degree(),
            "verify": verdict_json(&ext.base, &v),
            "mu": matched.map(|m| m.to_json()),
        }));
        Ok(())
    };
    match mu {
        Some(path) => {
            let ctx = ctx
                .as_ref()
                .ok_or_else(|| Error::Unsupported(format!("no μ-parametrisation for the base of {f}")))?;
            if f.tag != FamilyTag::HStar {
                return Err(Error::Unsupported("--mu selects a kernel character of hstar only".into()));
            }
            let want = read_mu(path, ctx.family, &base_f)?;
            // χ(z_abc) = μ_abc on the kernel generators z_abc
            let chi: Vec<RootExp> = ext
                .kernel
                .iter()
                .map(|&k| {
                    let n = ext.rep.generators()[k].name.as_bytes();
                    let key = ((n[1] - b'0') as u32, (n[2] - b'0') as u32, (n[3] - b'0') as u32);
                    RootExp::new(want.get(key) as i64, f.p)
                })
                .collect();
            let fixed: Vec<(usize, RootExp)> = ext.kernel.iter().copied().zip(chi.iter().copied()).collect();
            let rho = irr_chain(&ext.rep, &ladder_series(f, &ext.rep), &fixed)?;
            rho.verify_relations(&ext.rep)?;
            push(&chi, &rho, Some(&want))?;
        }
        None => {
            let set = complete_ladder(f, &ext.rep, budget)?;
            let mut seen = std::collections::BTreeSet::new();
            for r in &set.reps {
                let chi: Vec<RootExp> = ext
                    .kernel
                    .iter()
                    .map(|&k| r.central_value(&ext.rep.generator(k).into_exponents()))
                    .collect::<Result<_>>()?;
                if seen.insert(chi.iter().map(|c| c.value).collect::<Vec<_>>()) {
                    push(&chi, r, None)?;
                }
            }
        }
    }
    let out = match cli.format {
        Format::Json => to_json(&json!({
            "group": f.to_string(),
            "base": base_f.to_string(),
            "pass": pass,
            "projective_representations": entries,
        })),
        Format::Tsv => {
            let mut rows = vec![vec!["degree".into(), "pass".into(), "kernel_character".into()]];
            rows.extend(entries.iter().map(|e| {
                vec![
                    e["degree"].to_string(),
                    e["verify"]["pass"].to_string(),
                    e["kernel_character"].to_string(),
                ]
            }));
            tsv(rows)
        }
    };
    Ok(if pass { Outcome::Ok(out) } else { Outcome::Failed(out) })
}

fn verify(cli: &Cli, session: Session, suite: &str) -> Result<Outcome> {
    let reports = session.run_suite(suite)?;
    let failed = reports.iter().filter(|r| !r.pass).count();
    let out = match cli.format {
        Format::Json => to_json(&json!({
            "suite": suite,
            "seed": session.options().seed,
            "budget": session.options().budget,
            "passed": reports.len() - failed,
            "failed": failed,
            "criteria": reports,
        })),
        Format::Tsv => {
            let mut rows = vec![["id", "suite", "pass", "checks", "detail", "witness"].map(String::from).to_vec()];
            rows.extend(reports.iter().map(|r| {
                vec![
                    r.id.to_string(),
                    r.suite.to_string(),
                    r.pass.to_string(),
                    r.checks.to_string(),
                    r.detail.clone(),
                    r.witness.clone().unwrap_or_default(),
                ]
            }));
            tsv(rows)
        }
    };
    Ok(if failed == 0 { Outcome::Ok(out) } else { Outcome::Failed(out) })
}
