//! Command-line front end: scenario ingestion, subcommand dispatch,
//! deterministic JSON/text reports, and a bundled regression suite.
//!
//! Exit codes: 0 when every check passes, 1 when a check evaluates false
//! (the first failing assertion is named in the report), 2 for schema,
//! configuration or usage errors.

pub mod commands;
pub mod scenario;

use std::ffi::OsString;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Result};
use clap::{Parser, Subcommand};
use fluxhom::homology::{Genus, HomologyClass};
use fluxhom::johnson::{theorem_a_check, ConjugatedPush, TorelliWord};
use fluxhom::mapping_class::{check_braid, word_matrix, CurveClass, TwistLetter, TwistWord};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Map, Value};

use commands::{dispatch, Check, CommandOutput};
use scenario::{parse_scenario, Scenario};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_SCHEMA_ERROR: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "fluxhom",
    version,
    about = "Homology-level Dehn-twist algebra, Johnson-homomorphism flux identities, \
             strange-homology certificates and flat-annulus flux numerics"
)]
struct Cli {
    /// Emit the machine-readable JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Override the numeric tolerance of the invoked check.
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    /// Seed for the randomized spot checks of `regress`.
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Symplectic matrix of a twist word, with Torelli detection.
    TwistMatrix {
        #[arg(long)]
        scenario: PathBuf,
    },
    /// Commuting/braid/star/chain relation checks on homology.
    CheckRelations {
        #[arg(long)]
        scenario: PathBuf,
    },
    /// Johnson value of a word of conjugated point-pushes.
    Johnson {
        #[arg(long)]
        scenario: PathBuf,
    },
    /// Contracted Johnson value.
    Contract {
        #[arg(long)]
        scenario: PathBuf,
    },
    /// Section-flux identity on push words.
    TheoremA {
        #[arg(long)]
        scenario: PathBuf,
    },
    /// Predicted Jacobian flux and coefficient consistency.
    TheoremB {
        #[arg(long)]
        scenario: PathBuf,
    },
    /// Strange-homology reduction: Hamiltonian certificate or flux report.
    Sh1Verify {
        #[arg(long)]
        scenario: PathBuf,
    },
    /// Numeric flux on a flat annulus.
    FluxAnnulus {
        #[arg(long)]
        scenario: PathBuf,
    },
    /// Upper-half-plane triangle and subsurface areas.
    HypArea {
        #[arg(long)]
        scenario: PathBuf,
    },
    /// Run every bundled scenario plus seeded randomized spot checks.
    Regress,
}

impl Command {
    fn expected_scenario_command(&self) -> Option<&'static str> {
        match self {
            Command::TwistMatrix { .. } => Some("twist-matrix"),
            Command::CheckRelations { .. } => Some("check-relations"),
            Command::Johnson { .. } => Some("johnson"),
            Command::Contract { .. } => Some("contract"),
            Command::TheoremA { .. } => Some("theorem-a"),
            Command::TheoremB { .. } => Some("theorem-b"),
            Command::Sh1Verify { .. } => Some("sh1-verify"),
            Command::FluxAnnulus { .. } => Some("flux-annulus"),
            Command::HypArea { .. } => Some("hyp-area"),
            Command::Regress => None,
        }
    }

    fn scenario_path(&self) -> Option<&PathBuf> {
        match self {
            Command::TwistMatrix { scenario }
            | Command::CheckRelations { scenario }
            | Command::Johnson { scenario }
            | Command::Contract { scenario }
            | Command::TheoremA { scenario }
            | Command::TheoremB { scenario }
            | Command::Sh1Verify { scenario }
            | Command::FluxAnnulus { scenario }
            | Command::HypArea { scenario } => Some(scenario),
            Command::Regress => None,
        }
    }
}

/// Bundled regression scenarios, each reproducing one of the verified
/// statements end to end.
pub const BUNDLED_SCENARIOS: &[(&str, &str)] = &[
    ("braid_lift", include_str!("../scenarios/braid_lift.json")),
    ("star_action", include_str!("../scenarios/star_action.json")),
    ("star_lift", include_str!("../scenarios/star_lift.json")),
    ("chain_lift", include_str!("../scenarios/chain_lift.json")),
    (
        "genus2_chain_flux",
        include_str!("../scenarios/genus2_chain_flux.json"),
    ),
    (
        "sp_relations_g3",
        include_str!("../scenarios/sp_relations_g3.json"),
    ),
    (
        "twist_matrix_g2",
        include_str!("../scenarios/twist_matrix_g2.json"),
    ),
    (
        "johnson_push_g3",
        include_str!("../scenarios/johnson_push_g3.json"),
    ),
    (
        "contract_push_g3",
        include_str!("../scenarios/contract_push_g3.json"),
    ),
    (
        "theorem_a_g3",
        include_str!("../scenarios/theorem_a_g3.json"),
    ),
    (
        "theorem_b_g3",
        include_str!("../scenarios/theorem_b_g3.json"),
    ),
    (
        "flux_annulus_g3",
        include_str!("../scenarios/flux_annulus_g3.json"),
    ),
    ("swept_push", include_str!("../scenarios/swept_push.json")),
    ("twist_areas", include_str!("../scenarios/twist_areas.json")),
    ("hyp_areas", include_str!("../scenarios/hyp_areas.json")),
];

#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

/// Run the CLI on an argument vector and capture the report; the binary
/// is a thin wrapper around this.
pub fn run_from_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return Outcome {
                code: if e.use_stderr() {
                    EXIT_SCHEMA_ERROR
                } else {
                    EXIT_OK
                },
                stdout: e.to_string(),
            }
        }
    };

    match &cli.command {
        Command::Regress => match run_regress(cli.seed, cli.tolerance) {
            Ok((report, ok)) => Outcome {
                code: if ok { EXIT_OK } else { EXIT_CHECK_FAILED },
                stdout: render_regress(&report, cli.json),
            },
            Err(e) => Outcome {
                code: EXIT_SCHEMA_ERROR,
                stdout: format!("error: {e:#}\n"),
            },
        },
        command => {
            let path = command.scenario_path().expect("non-regress command");
            match run_scenario_file(path, command.expected_scenario_command(), cli.tolerance) {
                Ok((scenario, output)) => {
                    let code = if output.exit_ok {
                        EXIT_OK
                    } else {
                        EXIT_CHECK_FAILED
                    };
                    Outcome {
                        code,
                        stdout: render_report(&scenario, &output, cli.json),
                    }
                }
                Err(e) => Outcome {
                    code: EXIT_SCHEMA_ERROR,
                    stdout: format!("error: {e:#}\n"),
                },
            }
        }
    }
}

fn run_scenario_file(
    path: &PathBuf,
    expected_command: Option<&'static str>,
    tolerance: Option<f64>,
) -> Result<(Scenario, CommandOutput)> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| anyhow!("cannot read scenario {}: {e}", path.display()))?;
    let scenario = parse_scenario(&text)?;
    if let Some(expected) = expected_command {
        if scenario.body.command_name() != expected {
            bail!(
                "scenario drives `{}`, but `{}` was invoked",
                scenario.body.command_name(),
                expected
            );
        }
    }
    let output = dispatch(&scenario, tolerance)?;
    Ok((scenario, output))
}

fn first_failing(checks: &[Check]) -> Option<&Check> {
    checks.iter().find(|c| !c.ok)
}

fn render_report(scenario: &Scenario, output: &CommandOutput, as_json: bool) -> String {
    if as_json {
        let mut root = Map::new();
        root.insert("version".into(), json!(1));
        root.insert("subcommand".into(), json!(scenario.body.command_name()));
        if let Some(r) = &scenario.paper_ref {
            root.insert("paper_ref".into(), json!(r));
        }
        root.insert("report".into(), Value::Object(output.body.clone()));
        root.insert(
            "checks".into(),
            Value::Array(
                output
                    .checks
                    .iter()
                    .map(|c| json!({"name": c.name, "ok": c.ok, "detail": c.detail}))
                    .collect(),
            ),
        );
        root.insert("ok".into(), json!(output.exit_ok));
        if let Some(c) = first_failing(&output.checks) {
            root.insert("first_failing".into(), json!(c.name));
        }
        let mut text = serde_json::to_string_pretty(&Value::Object(root)).expect("serializable");
        text.push('\n');
        text
    } else {
        let mut lines = Vec::new();
        lines.push(format!("fluxhom {}", scenario.body.command_name()));
        if let Some(r) = &scenario.paper_ref {
            lines.push(format!("  scenario: {r}"));
        }
        for c in &output.checks {
            lines.push(format!(
                "  [{}] {}: {}",
                if c.ok { "PASS" } else { "FAIL" },
                c.name,
                c.detail
            ));
        }
        for (key, value) in &output.body {
            lines.push(format!("  {key} = {value}"));
        }
        match first_failing(&output.checks) {
            Some(c) if !output.exit_ok => lines.push(format!("result: FAIL ({})", c.name)),
            _ if !output.exit_ok => lines.push("result: FAIL (counterexample report)".into()),
            _ => lines.push("result: PASS".into()),
        }
        lines.push(String::new());
        lines.join("\n")
    }
}

struct RegressEntry {
    name: String,
    command: String,
    paper_ref: Option<String>,
    ok: bool,
    detail: String,
}

/// Seeded spot checks: random braid pairs and random push words, built by
/// pushing a standard configuration around with random symplectic words.
fn random_spot_checks(seed: u64) -> Result<Vec<RegressEntry>> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut entries = Vec::new();

    let random_word = |genus: Genus, rng: &mut StdRng| -> TwistWord {
        let len = rng.gen_range(1..5);
        let letters = (0..len)
            .map(|k| {
                let coeffs: Vec<i64> = (0..genus.dim()).map(|_| rng.gen_range(-2..=2)).collect();
                let class = HomologyClass::from_i64(genus, &coeffs).unwrap();
                let class = if class.is_zero() || !class.is_primitive() {
                    HomologyClass::x(1 + k % genus.get(), genus)
                } else {
                    class
                };
                let curve = CurveClass::new(format!("r{k}"), class).unwrap();
                TwistLetter::new(curve, if rng.gen_bool(0.5) { 1 } else { -1 }).unwrap()
            })
            .collect();
        TwistWord::new(letters)
    };

    let mut braid_ok = true;
    for gv in 2..=3usize {
        let genus = Genus::new(gv)?;
        for _ in 0..12 {
            let psi = random_word(genus, &mut rng);
            let m = word_matrix(&psi, genus);
            let a = CurveClass::new("a", m.apply(&HomologyClass::x(1, genus)))
                .map_err(|e| anyhow!("{e}"))?;
            let b = CurveClass::new("b", m.apply(&HomologyClass::y(1, genus)))
                .map_err(|e| anyhow!("{e}"))?;
            braid_ok &= check_braid(&a, &b).map_err(|e| anyhow!("{e}"))?;
        }
    }
    entries.push(RegressEntry {
        name: "random-braid-pairs".into(),
        command: "check-relations".into(),
        paper_ref: Some("braid relation on homology for random once-crossing pairs".into()),
        ok: braid_ok,
        detail: "24 random pairs with intersection one".into(),
    });

    let mut thm_a_ok = true;
    for gv in 2..=3usize {
        let genus = Genus::new(gv)?;
        for _ in 0..12 {
            let letters = (0..rng.gen_range(1..4))
                .map(|k| {
                    let conj = random_word(genus, &mut rng);
                    let curve = CurveClass::new(
                        format!("p{k}"),
                        HomologyClass::y(1 + k % genus.get(), genus),
                    )
                    .unwrap();
                    ConjugatedPush::new(conj, curve, if rng.gen_bool(0.5) { 1 } else { -1 })
                })
                .collect();
            thm_a_ok &= theorem_a_check(&TorelliWord::new(letters), genus);
        }
    }
    entries.push(RegressEntry {
        name: "random-push-words".into(),
        command: "theorem-a".into(),
        paper_ref: Some("section-flux identity on random words of conjugated pushes".into()),
        ok: thm_a_ok,
        detail: "24 random push words".into(),
    });

    Ok(entries)
}

fn run_regress(seed: u64, tolerance: Option<f64>) -> Result<(Vec<RegressEntry>, bool)> {
    let mut entries = Vec::new();
    for (name, text) in BUNDLED_SCENARIOS {
        let scenario = parse_scenario(text)
            .map_err(|e| anyhow!("bundled scenario `{name}` failed to parse: {e}"))?;
        let output = dispatch(&scenario, tolerance)
            .map_err(|e| anyhow!("bundled scenario `{name}` failed to run: {e}"))?;
        let ok = output.checks_ok();
        let detail = match first_failing(&output.checks) {
            Some(c) => format!("first failing: {} ({})", c.name, c.detail),
            None => format!("{} checks passed", output.checks.len()),
        };
        entries.push(RegressEntry {
            name: (*name).into(),
            command: scenario.body.command_name().into(),
            paper_ref: scenario.paper_ref.clone(),
            ok,
            detail,
        });
    }
    entries.extend(random_spot_checks(seed)?);
    let all_ok = entries.iter().all(|e| e.ok);
    Ok((entries, all_ok))
}

fn render_regress(entries: &[RegressEntry], as_json: bool) -> String {
    let all_ok = entries.iter().all(|e| e.ok);
    if as_json {
        let mut root = Map::new();
        root.insert("version".into(), json!(1));
        root.insert("subcommand".into(), json!("regress"));
        root.insert(
            "scenarios".into(),
            Value::Array(
                entries
                    .iter()
                    .map(|e| {
                        json!({
                            "name": e.name,
                            "command": e.command,
                            "paper_ref": e.paper_ref,
                            "ok": e.ok,
                            "detail": e.detail,
                        })
                    })
                    .collect(),
            ),
        );
        root.insert("ok".into(), json!(all_ok));
        if let Some(e) = entries.iter().find(|e| !e.ok) {
            root.insert("first_failing".into(), json!(e.name));
        }
        let mut text = serde_json::to_string_pretty(&Value::Object(root)).expect("serializable");
        text.push('\n');
        text
    } else {
        let mut lines = vec!["fluxhom regress".to_string()];
        for e in entries {
            lines.push(format!(
                "  [{}] {} ({}): {}",
                if e.ok { "PASS" } else { "FAIL" },
                e.name,
                e.command,
                e.detail
            ));
        }
        lines.push(if all_ok {
            "result: PASS".into()
        } else {
            "result: FAIL".into()
        });
        lines.push(String::new());
        lines.join("\n")
    }
}
