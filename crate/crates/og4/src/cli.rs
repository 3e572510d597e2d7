//! The `og4` command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use og4_core::constructions::{build_family, verify_instance, Budgets, FamilyId, FamilyInstance, InstanceData};
use og4_core::graph::{DEFAULT_COSET_INDEX_BOUND, DEFAULT_VERTEX_BUDGET};
use og4_core::verify::{check_oriented, DEFAULT_ORDER_BOUND};

use crate::formats::{export, ExportFormat};
use crate::json::{self, CertificateBundleJson, GroupJson, MetadataJson, ReportJson, SCHEMA};
use crate::{input, sweep, Error};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_PARAMS: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_INPUT: i32 = 4;

const EXIT_HELP: &str = "\
Exit codes:
  0  success; for verify, every check passed
  1  verify ran but some check failed
  2  invalid arguments or inadmissible parameters
  3  budget exceeded (the graph is too large to build)
  4  unreadable or malformed input file

Budgets can also be set with OG4_BUDGET_VERTICES, OG4_BUDGET_COSET_INDEX
and OG4_BUDGET_ORDER.";

#[derive(Debug, Parser)]
#[command(name = "og4", version, about = "Build and verify 4-valent G-oriented graphs of biquasiprimitive type")]
#[command(after_help = EXIT_HELP)]
pub struct Cli {
    #[command(flatten)]
    pub budgets: BudgetArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct BudgetArgs {
    /// Largest bi-Cayley graph to build, in vertices.
    #[arg(long, global = true, env = "OG4_BUDGET_VERTICES", default_value_t = DEFAULT_VERTEX_BUDGET as u64,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub vertex_budget: u64,
    /// Largest coset graph to build, in cosets.
    #[arg(long, global = true, env = "OG4_BUDGET_COSET_INDEX", default_value_t = DEFAULT_COSET_INDEX_BOUND as u64,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub coset_index_bound: u64,
    /// Largest group enumerated element by element.
    #[arg(long, global = true, env = "OG4_BUDGET_ORDER", default_value_t = DEFAULT_ORDER_BOUND as u64,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub order_bound: u64,
}

impl BudgetArgs {
    pub fn budgets(&self) -> Budgets {
        Budgets {
            vertices: self.vertex_budget as usize,
            coset_index: self.coset_index_bound as usize,
            order_bound: self.order_bound as u128,
        }
    }
}

#[derive(Debug, Args)]
pub struct ParamArgs {
    /// Prime parameter of A1, A2, B4, C2 and C4.
    #[arg(long)]
    pub p: Option<u64>,
    /// Degree of the alternating group in B1, B2 and C1.
    #[arg(long)]
    pub n: Option<u64>,
}

impl ParamArgs {
    /// The parameter for `family`, or its first default.
    pub fn resolve(&self, family: FamilyId) -> Result<u64, Error> {
        let (given, other) = match family.parameter() {
            'p' => (self.p, self.n.map(|_| "--n")),
            _ => (self.n, self.p.map(|_| "--p")),
        };
        if let Some(flag) = other {
            return Err(Error::Usage(format!("{family} takes --{}, not {flag}", family.parameter())));
        }
        Ok(given.unwrap_or(family.default_params()[0]))
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build one instance and write its graph, or its certificate data.
    Construct {
        family: FamilyId,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum)]
        export: Option<ExportFormat>,
        /// Output directory.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Run every check on one instance, or on a graph and group read from a file.
    Verify {
        #[arg(required_unless_present = "input", conflicts_with = "input")]
        family: Option<FamilyId>,
        #[command(flatten)]
        params: ParamArgs,
        /// JSON file with "schema", "graph" {vertices, edges} and "group" {degree, generators}.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Write the JSON report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify every family and print a summary table.
    Table2 {
        /// Comma-separated families to keep.
        #[arg(long, value_delimiter = ',')]
        families: Vec<FamilyId>,
        /// JSON object mapping family names to parameter lists.
        #[arg(long)]
        params_file: Option<PathBuf>,
        /// Worker threads; defaults to the available parallelism.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        jobs: Option<u64>,
        /// Write the JSON sweep report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Exit code for an error raised while building or checking.
pub fn exit_code(e: &Error) -> i32 {
    use og4_core::Error as C;
    match e {
        Error::Core(C::Inadmissible(_) | C::NotPrime(_)) | Error::Usage(_) => EXIT_PARAMS,
        Error::Core(C::BudgetExceeded { .. } | C::OrderBoundExceeded { .. }) => EXIT_BUDGET,
        Error::Io { .. } | Error::Format(_) | Error::Core(_) | Error::UnknownFormat(_) | Error::MissingOrientation => {
            EXIT_INPUT
        }
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), Error> {
    std::fs::write(path, bytes).map_err(|e| Error::io(path, e))
}

fn read_file(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

/// Parses `args` and runs the command. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARAMS } else { EXIT_PASS };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let budgets = cli.budgets.budgets();
    let result = match cli.command {
        Command::Construct {
            family,
            params,
            export,
            out: dir,
        } => params
            .resolve(family)
            .and_then(|p| construct(family, p, export, &dir, &budgets, out, err)),
        Command::Verify {
            family,
            params,
            input,
            out: path,
        } => match (family, input) {
            (_, Some(file)) => verify_input(&file, path.as_deref(), &budgets, out),
            (Some(f), None) => params
                .resolve(f)
                .and_then(|p| verify_family(f, p, path.as_deref(), &budgets, out)),
            (None, None) => unreachable!("clap requires a family or --input"),
        },
        Command::Table2 {
            families,
            params_file,
            jobs,
            out: path,
        } => table2(&families, params_file.as_deref(), jobs, path.as_deref(), &budgets, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if matches!(e, Error::Core(og4_core::Error::BudgetExceeded { .. })) {
                let _ = writeln!(err, "hint: raise the budget, or use a certificate-tier family");
            }
            exit_code(&e)
        }
    }
}

fn stem(family: FamilyId, param: u64) -> String {
    format!("{}_{}{}", family.name(), family.parameter(), param)
}

fn construct(
    family: FamilyId,
    param: u64,
    format: Option<ExportFormat>,
    dir: &Path,
    budgets: &Budgets,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Error> {
    let inst = build_family(family, param, budgets)?;
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let stem = stem(family, param);
    match &inst.data {
        InstanceData::Explicit(e) => {
            let graph = &e.pair.graph;
            let written = match format {
                Some(fmt) => {
                    let orientation = match fmt {
                        ExportFormat::DotOriented => check_oriented(&e.pair)?.orientation,
                        _ => None,
                    };
                    let path = dir.join(format!("{stem}.{}", fmt.extension()));
                    write_file(&path, &export(graph, orientation.as_ref(), fmt)?)?;
                    Some(path)
                }
                None => None,
            };
            let meta = MetadataJson {
                schema: SCHEMA,
                construction: family.name().into(),
                parameters: json::params(family, param),
                vertex_count: graph.vertex_count(),
                edge_count: graph.edge_count(),
                valency: graph.regular_degree(),
                group_order: e.pair.group.order(),
                format: format.map_or("none", ExportFormat::name).into(),
                group: GroupJson::from_group(&e.pair.group),
            };
            let meta_path = dir.join(format!("{stem}.json"));
            write_file(&meta_path, json::to_pretty(&meta).as_bytes())?;
            writeln!(
                out,
                "{family} {}={param}: {} vertices, {} edges, |G| = {}",
                family.parameter(),
                graph.vertex_count(),
                graph.edge_count(),
                meta.group_order
            )
            .map_err(|e| Error::io(Path::new("<stdout>"), e))?;
            for path in written.iter().chain([&meta_path]) {
                writeln!(out, "wrote {}", path.display()).map_err(|e| Error::io(Path::new("<stdout>"), e))?;
            }
            Ok(EXIT_PASS)
        }
        InstanceData::Certificate(c) => {
            let bundle = CertificateBundleJson::new(family, param, c);
            let path = dir.join(format!("{stem}.certificate.json"));
            write_file(&path, json::to_pretty(&bundle).as_bytes())?;
            writeln!(out, "wrote {}", path.display()).map_err(|e| Error::io(Path::new("<stdout>"), e))?;
            if format.is_some() {
                let _ = writeln!(
                    err,
                    "error: the coset graph has {} vertices, beyond the budget of {}; wrote the certificate data instead \
                     (run `og4 verify {family}` for the certificate-tier checks)",
                    bundle.coset_graph_index, budgets.coset_index
                );
                return Ok(EXIT_BUDGET);
            }
            Ok(EXIT_PASS)
        }
    }
}

fn emit_report(report: &ReportJson, path: Option<&Path>, out: &mut dyn Write) -> Result<i32, Error> {
    let text = json::to_pretty(report);
    match path {
        Some(p) => {
            write_file(p, text.as_bytes())?;
            let status = if report.passed { "pass" } else { "FAIL" };
            writeln!(out, "{} {status}; report written to {}", report.construction, p.display())
        }
        None => out.write_all(text.as_bytes()),
    }
    .map_err(|e| Error::io(Path::new("<stdout>"), e))?;
    Ok(if report.passed { EXIT_PASS } else { EXIT_CHECK_FAILED })
}

fn verify_family(
    family: FamilyId,
    param: u64,
    path: Option<&Path>,
    budgets: &Budgets,
    out: &mut dyn Write,
) -> Result<i32, Error> {
    let inst: FamilyInstance = build_family(family, param, budgets)?;
    emit_report(&ReportJson::from_report(&verify_instance(&inst, budgets)), path, out)
}

fn verify_input(file: &Path, path: Option<&Path>, budgets: &Budgets, out: &mut dyn Write) -> Result<i32, Error> {
    let text = read_file(file)?;
    let pair = input::load_pair(&text).map_err(|e| match e {
        Error::Core(c) => Error::Format(c.to_string()),
        other => other,
    })?;
    emit_report(&ReportJson::from_report(&input::verify_pair(&pair, budgets)), path, out)
}

fn table2(
    families: &[FamilyId],
    params_file: Option<&Path>,
    jobs: Option<u64>,
    path: Option<&Path>,
    budgets: &Budgets,
    out: &mut dyn Write,
) -> Result<i32, Error> {
    let mut plan = match params_file {
        Some(p) => sweep::parse_params_file(&read_file(p)?)?,
        None => sweep::default_plan(),
    };
    if !families.is_empty() {
        plan = sweep::restrict(plan, families);
    }
    let jobs = jobs
        .map(|j| j as usize)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let outcomes = sweep::run(&plan, budgets, jobs);
    out.write_all(sweep::render_table(&outcomes).as_bytes())
        .map_err(|e| Error::io(Path::new("<stdout>"), e))?;
    if let Some(p) = path {
        write_file(p, json::to_pretty(&sweep::to_json(&outcomes)).as_bytes())?;
    }
    Ok(EXIT_PASS)
}
