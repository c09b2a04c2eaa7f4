use std::error::Error;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Value};
use splitlts::connectivity::{
    check_root_multiplicative, connection_classes, enumerate_ideals_maximal_length, find_connection,
    find_nj_connection, j_partition, nj_classes, simplicity_report, ClassReport, ConnectError, Connection,
};
use splitlts::corpus::{build_corpus, corpus_file};
use splitlts::embedding::{check_right_leibniz, masa_check, standard_embedding, Maximality};
use splitlts::format::{read_system, read_text, DecompositionFile, EmbeddingFile, MasaFile, ParsedSystem, SystemFile};
use splitlts::split::{decompose, Root, RootDecomposition, SplitError};
use splitlts::triple::{check_leibniz_triple, is_lie_triple_system, j_report, IdentityReport, TripleSystem};

use crate::{Cli, Command, CorpusCommand, ReportCommand};

type CliResult<T> = Result<T, Box<dyn Error>>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success = 0,
    CheckedFalse = 1,
}

impl Status {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Success
        } else {
            Status::CheckedFalse
        }
    }
}

pub struct Outcome {
    pub status: Status,
    json: Value,
    text: String,
}

impl Outcome {
    fn new(status: Status, json: Value, text: String) -> Self {
        Self { status, json, text }
    }

    pub fn print(&self, as_json: bool) {
        if as_json {
            println!("{}", serde_json::to_string_pretty(&self.json).expect("values serialize"));
        } else {
            print!("{}", self.text);
        }
    }
}

fn to_value<T: Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("reports serialize")
}

fn with_version(mut value: Value) -> Value {
    if let Value::Object(map) = &mut value {
        map.insert("schema_version".to_string(), json!(1));
    }
    value
}

fn load_triple(path: &Path) -> CliResult<(TripleSystem, Option<Vec<String>>)> {
    let (file, _) = read_system(path)?;
    Ok((file.triple_system()?, file.basis))
}

fn load_decomposition(path: &Path) -> CliResult<RootDecomposition> {
    Ok(DecompositionFile::parse(&read_text(path)?)?.rebuild()?)
}

fn decompose_with(file: &Path, masa: &Path) -> CliResult<(RootDecomposition, Option<Vec<String>>)> {
    let (t, basis) = load_triple(file)?;
    let e = standard_embedding(&t)?;
    let elements = MasaFile::parse(&read_text(masa)?)?.elements_for(&e)?;
    Ok((decompose(&t, &e, &elements)?, basis))
}

fn parse_root(d: &RootDecomposition, text: &str) -> CliResult<Root> {
    let root: Root = text.parse()?;
    if root.values().len() != d.masa_rank() {
        return Err(SplitError::BadRoot(text.to_string()).into());
    }
    if !d.in_lambda1(&root) {
        return Err(ConnectError::RootUnknown(root).into());
    }
    Ok(root)
}

/// Writes `contents` to `output` or returns it as the printed result.
fn emit(output: &Option<PathBuf>, contents: String, summary: String) -> CliResult<(Value, String)> {
    match output {
        Some(path) => {
            std::fs::write(path, &contents).map_err(|e| format!("E_IO: {}: {e}", path.display()))?;
            let json = json!({"schema_version": 1, "written": path.display().to_string(), "summary": summary});
            Ok((json, format!("{summary}\nwrote {}\n", path.display())))
        }
        None => {
            let json: Value = serde_json::from_str(&contents).expect("emitted files are JSON");
            Ok((json, contents))
        }
    }
}

fn identity_text(kind: &str, report: &IdentityReport) -> String {
    let mut text = format!(
        "{kind}: {} ({} tuples checked)\n",
        if report.passed { "all identities hold" } else { "identities fail" },
        report.tuples_checked
    );
    for v in report.violations.iter().take(20) {
        let _ = writeln!(
            text,
            "  {:?} at {:?}: defect {:?}",
            v.identity,
            v.indices,
            splitlts::exact_linear::format_vector(&v.defect)
        );
    }
    if report.violations.len() > 20 {
        let _ = writeln!(text, "  ... {} more", report.violations.len() - 20);
    }
    text
}

fn root_table_text(title: &str, zero_dim: usize, rows: &[(Root, usize)]) -> String {
    let mut text = format!("{title}: zero part dim {zero_dim}\n");
    for (r, dim) in rows {
        let _ = writeln!(text, "  {r}  dim {dim}");
    }
    text
}

fn classes_text(label: &str, report: &ClassReport) -> String {
    match &report.classes {
        Some(classes) => {
            let mut text = format!("{label}: {} class(es)\n", classes.len());
            for c in classes {
                let roots: Vec<String> = c.iter().map(Root::to_string).collect();
                let _ = writeln!(text, "  {{{}}}", roots.join(" "));
            }
            text
        }
        None => format!(
            "{label}: not an equivalence (reflexive {}, symmetric {}, transitive {})\n",
            report.reflexive, report.symmetric, report.transitive
        ),
    }
}

fn connection_outcome(found: Option<Connection>, from: &Root, to: &Root) -> Outcome {
    match found {
        Some(c) => {
            let chain: Vec<String> = c.chain.iter().map(Root::to_string).collect();
            let sign = if c.target_sign > 0 { "" } else { "-" };
            let text = format!("connected: {} sums to {sign}{to}\n", chain.join(" "));
            Outcome::new(Status::Success, with_version(json!({"connected": true, "connection": to_value(&c)})), text)
        }
        None => Outcome::new(
            Status::CheckedFalse,
            with_version(json!({"connected": false, "from": to_value(from), "to": to_value(to)})),
            format!("no connection from {from} to ±{to}\n"),
        ),
    }
}

pub fn run(cli: &Cli) -> CliResult<Outcome> {
    match &cli.command {
        Command::Verify { file } => {
            let (system_file, parsed) = read_system(file)?;
            let (kind, report) = match parsed {
                ParsedSystem::Algebra(l) => ("leibniz_algebra", check_right_leibniz(&l)),
                ParsedSystem::Triple(t) => ("leibniz_triple_system", check_leibniz_triple(&t)),
            };
            let json = with_version(json!({"kind": kind, "dim": system_file.dim, "report": to_value(&report)}));
            Ok(Outcome::new(Status::from_bool(report.passed), json, identity_text(kind, &report)))
        }
        Command::Derive { file, output } => {
            let (system_file, parsed) = read_system(file)?;
            let ParsedSystem::Algebra(l) = parsed else {
                return Err("E_KIND: derive expects a leibniz_algebra file".into());
            };
            let t = splitlts::embedding::derived_triple_system(&l)?;
            let contents = SystemFile::from_triple(&t, system_file.basis).to_json();
            let (json, text) = emit(output, contents, format!("derived triple system of dimension {}", t.dim()))?;
            Ok(Outcome::new(Status::Success, json, text))
        }
        Command::Embed { file, output } => {
            let (t, basis) = load_triple(file)?;
            let e = standard_embedding(&t)?;
            let grading = e.check_grading();
            let summary = format!(
                "L0 dim {}, L1 dim {}, kernel rank {}, grading {}",
                e.l0_dim(),
                t.dim(),
                e.kernel_rank(),
                if grading.passed() { "holds" } else { "fails" }
            );
            let (json, text) = emit(output, EmbeddingFile::new(&e, basis).to_json(), summary)?;
            Ok(Outcome::new(Status::from_bool(grading.passed()), json, text))
        }
        Command::MasaCheck { embedding, masa } => {
            let e = EmbeddingFile::parse(&read_text(embedding)?)?.rebuild()?;
            let elements = MasaFile::parse(&read_text(masa)?)?.elements_for(&e)?;
            let report = masa_check(&e, &elements)?;
            let ok = report.abelian && report.maximal == Maximality::Yes;
            let text = format!(
                "abelian: {}\nmaximal: {:?}\ncentralizer dim: {}\n",
                report.abelian,
                report.maximal,
                report.centralizer.rank()
            );
            Ok(Outcome::new(Status::from_bool(ok), with_version(to_value(&report)), text))
        }
        Command::Decompose { file, masa, output } => {
            let (d, basis) = decompose_with(file, masa)?;
            let summary = format!(
                "{}split certified: {}",
                root_table_text("T", d.t_zero().rank(), &d.root_table()),
                d.is_split_certified()
            );
            let (json, text) = emit(output, DecompositionFile::new(&d, basis).to_json(), summary)?;
            Ok(Outcome::new(Status::from_bool(d.is_split_certified()), json, text))
        }
        Command::Roots { decomposition } => {
            let d = load_decomposition(decomposition)?;
            let file = DecompositionFile::new(&d, None);
            let text = root_table_text("T", d.t_zero().rank(), &d.root_table())
                + &root_table_text("L0", d.l0_zero().rank(), &d.l0_root_table());
            let json = json!({
                "schema_version": 1,
                "t_zero_dim": file.t_zero_dim,
                "roots": file.roots,
                "l0_zero_dim": file.l0_zero_dim,
                "l0_roots": file.l0_roots,
                "split_certified": file.split_certified,
            });
            Ok(Outcome::new(Status::Success, json, text))
        }
        Command::Connect { decomposition, from, to, not_j } => {
            let d = load_decomposition(decomposition)?;
            let (from, to) = (parse_root(&d, from)?, parse_root(&d, to)?);
            let found = if *not_j {
                let p = j_partition(&d)?;
                find_nj_connection(&d, &p, &from, &to)?
            } else {
                find_connection(&d, &from, &to)?
            };
            Ok(connection_outcome(found, &from, &to))
        }
        Command::Classes { decomposition, not_j } => {
            let d = load_decomposition(decomposition)?;
            if *not_j {
                let p = j_partition(&d)?;
                let classes = nj_classes(&d, &p);
                let text = classes_text("J part", &classes.j) + &classes_text("not-J part", &classes.not_j);
                Ok(Outcome::new(Status::Success, with_version(to_value(&classes)), text))
            } else {
                let report = connection_classes(&d);
                let text = classes_text("roots", &report);
                Ok(Outcome::new(Status::Success, with_version(to_value(&report)), text))
            }
        }
        Command::J { file } => {
            let (t, _) = load_triple(file)?;
            let report = j_report(&t);
            let lie = is_lie_triple_system(&t);
            let text = format!(
                "J dim {}\n{{T,T,J}} = {{T,J,T}} = 0: {}\nLie triple system: {lie}\n",
                report.j.rank(),
                report.annihilated_inside
            );
            let json = with_version(
                json!({"j": to_value(&report.j), "annihilated_inside": report.annihilated_inside, "is_lie_triple_system": lie}),
            );
            Ok(Outcome::new(Status::Success, json, text))
        }
        Command::Partition { decomposition } => {
            let d = load_decomposition(decomposition)?;
            let p = j_partition(&d)?;
            let list = |roots: &[Root]| roots.iter().map(Root::to_string).collect::<Vec<_>>().join(" ");
            let text = format!(
                "J roots: {{{}}}\nnot-J roots: {{{}}}\nJ dim {}\n",
                list(&p.lambda_j),
                list(&p.lambda_not_j),
                p.j.rank()
            );
            Ok(Outcome::new(Status::Success, with_version(to_value(&p)), text))
        }
        Command::Multiplicative { decomposition } => {
            let d = load_decomposition(decomposition)?;
            let p = j_partition(&d)?;
            let report = check_root_multiplicative(&d, &p)?;
            let mut text =
                format!("root-multiplicative: {} ({} triples checked)\n", report.passed, report.triples_checked);
            for f in &report.failures {
                let _ = writeln!(
                    text,
                    "  condition ({}) fails at {} {} {}",
                    f.condition, f.roots[0], f.roots[1], f.roots[2]
                );
            }
            Ok(Outcome::new(Status::from_bool(report.passed), with_version(to_value(&report)), text))
        }
        Command::Ideals { decomposition, cap } => {
            let d = load_decomposition(decomposition)?;
            let family = enumerate_ideals_maximal_length(&d, *cap)?;
            let mut text = String::new();
            for ideal in &family.ideals {
                let roots: Vec<String> = ideal.roots.iter().map(Root::to_string).collect();
                let _ = writeln!(
                    text,
                    "dim {:>2}  ideal {}  decomposes {}  roots {{{}}}  [{}]",
                    ideal.space.rank(),
                    ideal.is_ideal,
                    ideal.decomposes,
                    roots.join(" "),
                    ideal.labels.join(", ")
                );
            }
            Ok(Outcome::new(Status::Success, with_version(to_value(&family)), text))
        }
        Command::Report(ReportCommand::Simplicity(args)) => {
            let (d, _) = decompose_with(&args.file, &args.masa)?;
            let report = simplicity_report(&d)?;
            let text = format!(
                "characterization: {:?}\nbrute force: {:?}\nmodule route: {:?} ({})\n",
                report.verdict_theorem,
                report.verdict_bruteforce,
                report.module_route.verdict,
                report.module_route.reason
            );
            let status = match report.is_simple() {
                Some(simple) => Status::from_bool(simple),
                None => return Err("E_UNDETERMINED: simplicity could not be decided".into()),
            };
            Ok(Outcome::new(status, to_value(&report), text))
        }
        Command::Corpus(CorpusCommand::List) => {
            let files = build_corpus();
            let mut text = String::new();
            for f in &files {
                let _ = writeln!(text, "{:<24} {}", f.name, f.description);
            }
            let list: Vec<Value> =
                files.iter().map(|f| json!({"name": f.name, "description": f.description})).collect();
            Ok(Outcome::new(Status::Success, json!({"schema_version": 1, "files": list}), text))
        }
        Command::Corpus(CorpusCommand::Emit { name, output }) => {
            let file = corpus_file(name).ok_or_else(|| format!("E_UNKNOWN_CORPUS: no corpus file named {name:?}"))?;
            let (json, text) = emit(output, file.contents, file.description)?;
            Ok(Outcome::new(Status::Success, json, text))
        }
    }
}
