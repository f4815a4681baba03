//! Command-line parsing into validated jobs, and their execution.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use fusion_orbit::cohomology::{CohomologyStore, Context};
use fusion_orbit::decomp::{
    centralizer_row, example_c3_rtimes_z, normalizer_row, stable_elements, subgroup_limits, verify_norm_sharp,
    verify_reduction, verify_thesame, LimitsReport,
};
use fusion_orbit::exec::ExecMode;
use fusion_orbit::fusion::{fusion_system, FusionSystem, Preset};
use fusion_orbit::group::{builtin, FiniteGroup, GroupSpec};
use fusion_orbit::linalg::Prime;
use fusion_orbit::report::{Format, Report};
use fusion_orbit::Error;

use crate::config::Config;

#[derive(Debug, Parser)]
#[command(name = "fusion-orbit", version, about = "Higher limits over orbit categories of fusion systems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// TOML file with bounds, cache directory, format and mode.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    /// Output format: json or text-table.
    #[arg(long, global = true)]
    pub format: Option<Format>,

    /// Execution mode: sequential or parallel.
    #[arg(long, global = true, value_parser = parse_mode)]
    pub mode: Option<ExecMode>,

    /// Directory of the persistent cohomology store.
    #[arg(long, global = true, value_name = "DIR")]
    pub cache_dir: Option<PathBuf>,
}

fn parse_mode(s: &str) -> Result<ExecMode, String> {
    match s {
        "sequential" => Ok(ExecMode::Sequential),
        "parallel" => Ok(ExecMode::Parallel),
        _ => Err(format!("unknown mode {s:?}, expected sequential or parallel")),
    }
}

#[derive(Debug, Args)]
pub struct Target {
    /// Builtin group name (S3, S4, A4, D8, Q8, C_p^k, ...) or a JSON group file.
    #[arg(long)]
    pub group: String,

    /// The prime p.
    #[arg(long)]
    pub p: u32,

    /// Accept a prime that does not divide the group order.
    #[arg(long)]
    pub allow_coprime: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// lim^i H^n over the orbit category of a collection, for n <= N.
    Limits {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value = "centric")]
        collection: Preset,
        /// Largest cohomological degree.
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Largest limit degree.
        #[arg(long, default_value_t = 2)]
        i: usize,
    },
    /// Dimensions of the stable elements H^n(F) for n <= N.
    Stable {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = 4)]
        n: usize,
    },
    /// Fusion classes of p-subgroups with their properties.
    Classify {
        #[command(flatten)]
        target: Target,
    },
    /// Checks the saturation axioms.
    SaturateCheck {
        #[command(flatten)]
        target: Target,
    },
    /// lim^s over the centralizer decomposition, for n <= N.
    CentralizerRow {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        i: usize,
    },
    /// lim^s over the normalizer decomposition, for n <= N.
    NormalizerRow {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        i: usize,
    },
    /// Checks a comparison theorem on one instance.
    Verify {
        #[command(subcommand)]
        check: Check,
    },
    /// Worked examples with known answers.
    Example {
        #[command(subcommand)]
        example: Example,
    },
}

#[derive(Debug, Subcommand)]
pub enum Check {
    /// Orbit category and fusion orbit category give the same higher limits.
    Thesame {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value = "centric")]
        collection: Preset,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        d: usize,
    },
    /// A smaller collection gives the same higher limits as a larger one.
    Reduction {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value = "centric")]
        collection: Preset,
        /// The larger collection.
        #[arg(long, default_value = "centric")]
        against: Preset,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        d: usize,
    },
    /// The normalizer decomposition is sharp.
    NormSharp {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        i: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum Example {
    /// C3 ⋊ Z with Z acting by inversion, at p = 3.
    C3SemidirectZ {
        #[arg(long, default_value_t = 8)]
        n: usize,
    },
}

/// Which computation a job runs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Task {
    Limits { collection: Preset },
    Stable,
    Classify,
    SaturateCheck,
    CentralizerRow,
    NormalizerRow,
    Thesame { collection: Preset },
    Reduction { collection: Preset, against: Preset },
    NormSharp,
    Example,
}

/// A fully validated job.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobSpec {
    pub task: Task,
    pub group: Option<GroupSource>,
    pub prime: Option<u32>,
    pub allow_coprime: bool,
    /// Largest cohomological degree.
    pub n_max: usize,
    /// Largest limit degree.
    pub i_max: usize,
    pub format: Format,
    pub mode: ExecMode,
    pub cache_dir: Option<PathBuf>,
    pub max_order: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSource {
    Builtin(String),
    File(PathBuf),
}

impl GroupSource {
    fn new(arg: &str) -> Self {
        if arg.ends_with(".json") || Path::new(arg).is_file() {
            GroupSource::File(PathBuf::from(arg))
        } else {
            GroupSource::Builtin(arg.to_string())
        }
    }

    fn load(&self) -> Result<FiniteGroup, Error> {
        match self {
            GroupSource::Builtin(name) => builtin::by_name(name),
            GroupSource::File(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
                GroupSpec::from_json(&text)?.build()
            }
        }
    }
}

/// Failure of a job before any report exists.
#[derive(Debug)]
pub enum JobError {
    /// Bad arguments, config or input files.
    Usage(String),
    /// The computation itself failed.
    Run(Error),
}

impl std::fmt::Display for JobError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            JobError::Usage(s) => f.write_str(s),
            JobError::Run(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for JobError {
    fn from(e: Error) -> Self {
        match e {
            Error::Construction(_) | Error::ComplexInvariant { .. } | Error::Dimension(_) => JobError::Run(e),
            other => JobError::Usage(other.to_string()),
        }
    }
}

fn check_bound(what: &str, value: usize, limit: usize) -> Result<(), JobError> {
    if value > limit {
        return Err(JobError::Usage(format!("{what} = {value} exceeds the configured maximum {limit}")));
    }
    Ok(())
}

impl JobSpec {
    /// Merges the command line with the config file; flags win.
    pub fn parse(cli: Cli) -> Result<Self, JobError> {
        let config = match &cli.config {
            Some(path) => Config::load(path).map_err(JobError::Usage)?,
            None => Config::default(),
        };
        let cache_dir = cli
            .cache_dir
            .or_else(|| std::env::var_os(fusion_orbit::cohomology::CACHE_DIR_ENV).filter(|d| !d.is_empty()).map(PathBuf::from))
            .or(config.cache_dir.clone());
        let (task, target, n_max, i_max) = match cli.command {
            Command::Limits { target, collection, n, i } => (Task::Limits { collection }, Some(target), n, i),
            Command::Stable { target, n } => (Task::Stable, Some(target), n, 0),
            Command::Classify { target } => (Task::Classify, Some(target), 0, 0),
            Command::SaturateCheck { target } => (Task::SaturateCheck, Some(target), 0, 0),
            Command::CentralizerRow { target, n, i } => (Task::CentralizerRow, Some(target), n, i),
            Command::NormalizerRow { target, n, i } => (Task::NormalizerRow, Some(target), n, i),
            Command::Verify { check } => match check {
                Check::Thesame { target, collection, n, d } => (Task::Thesame { collection }, Some(target), n, d),
                Check::Reduction { target, collection, against, n, d } => {
                    (Task::Reduction { collection, against }, Some(target), n, d)
                }
                Check::NormSharp { target, n, i } => (Task::NormSharp, Some(target), n, i),
            },
            Command::Example { example: Example::C3SemidirectZ { n } } => (Task::Example, None, n, 1),
        };
        check_bound("n", n_max, config.max_degree)?;
        check_bound("limit degree", i_max, config.max_limit_degree)?;
        if let Some(t) = &target {
            Prime::new(t.p).map_err(JobError::from)?;
        }
        Ok(JobSpec {
            task,
            group: target.as_ref().map(|t| GroupSource::new(&t.group)),
            prime: target.as_ref().map(|t| t.p),
            allow_coprime: target.as_ref().is_some_and(|t| t.allow_coprime),
            n_max,
            i_max,
            format: cli.format.or(config.format).unwrap_or(Format::Json),
            mode: cli.mode.or(config.mode).unwrap_or_default(),
            cache_dir,
            max_order: config.max_order,
        })
    }

    fn context(&self) -> Result<Context, JobError> {
        let store = match &self.cache_dir {
            Some(dir) => CohomologyStore::with_dir(dir)?,
            None => CohomologyStore::in_memory(),
        };
        Ok(Context::new(store, self.mode))
    }

    fn system(&self) -> Result<FusionSystem, JobError> {
        let (Some(source), Some(p)) = (&self.group, self.prime) else {
            return Err(JobError::Usage("this command needs --group and --p".into()));
        };
        let g = source.load()?;
        check_bound("group order", g.order(), self.max_order)?;
        let p = Prime::new(p)?;
        if g.order() % p.get() as usize != 0 && !self.allow_coprime {
            return Err(JobError::Usage(format!(
                "{} does not divide |{}| = {}; pass --allow-coprime to run anyway",
                p.get(),
                g.name(),
                g.order()
            )));
        }
        Ok(fusion_system(&Arc::new(g), p)?)
    }

    /// Runs the job. The report is deterministic for fixed inputs.
    pub fn run(&self) -> Result<Report, JobError> {
        let ctx = self.context()?;
        if self.task == Task::Example {
            return Ok(Report::Example(example_c3_rtimes_z(self.n_max, &ctx)?));
        }
        let f = self.system()?;
        let (n_max, i_max) = (self.n_max, self.i_max);
        let rows = |row: &dyn Fn(usize) -> fusion_orbit::Result<LimitsReport>| -> Result<Report, JobError> {
            let reports = (0..=n_max).map(row).collect::<fusion_orbit::Result<Vec<_>>>()?;
            Ok(Report::Limits { reports })
        };
        match &self.task {
            Task::Limits { collection } => {
                let c = f.collection(collection)?;
                rows(&|n| subgroup_limits(&f, &c, n, i_max, &ctx))
            }
            Task::Stable => {
                let dims = (0..=n_max).map(|n| stable_elements(&f, n, &ctx).map(|s| s.dim())).collect::<fusion_orbit::Result<_>>()?;
                Ok(Report::Stable { system: f.name().to_string(), prime: f.prime().get(), dims })
            }
            Task::Classify => Ok(Report::classify(&f, &f.classify(self.mode))),
            Task::SaturateCheck => Ok(Report::saturation(&f, &f.is_saturated())),
            Task::CentralizerRow => rows(&|n| centralizer_row(&f, n, i_max, &ctx)),
            Task::NormalizerRow => rows(&|n| normalizer_row(&f, n, i_max, &ctx)),
            Task::Thesame { collection } => {
                let c = f.collection(collection)?;
                Ok(Report::Verify(verify_thesame(&f, &c, n_max, i_max, &ctx)?))
            }
            Task::Reduction { collection, against } => {
                let c = f.collection(collection)?;
                let c_prime = f.collection(against)?;
                Ok(Report::Verify(verify_reduction(&f, &c, &c_prime, n_max, i_max, &ctx)?))
            }
            Task::NormSharp => Ok(Report::Verify(verify_norm_sharp(&f, n_max, i_max, &ctx)?)),
            Task::Example => unreachable!("handled above"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(line: &str) -> Result<JobSpec, JobError> {
        let cli = Cli::try_parse_from(std::iter::once("fusion-orbit").chain(line.split_whitespace()))
            .map_err(|e| JobError::Usage(e.to_string()))?;
        JobSpec::parse(cli)
    }

    #[test]
    fn limits_job() {
        let job = parse("limits --group S4 --p 2 --collection centric --n 3 --i 2").unwrap();
        assert_eq!(job.task, Task::Limits { collection: Preset::Centric });
        assert_eq!(job.group, Some(GroupSource::Builtin("S4".into())));
        assert_eq!((job.prime, job.n_max, job.i_max), (Some(2), 3, 2));
        assert_eq!(job.format, Format::Json);
    }

    #[test]
    fn example_job() {
        let job = parse("example c3-semidirect-z --n 8").unwrap();
        assert_eq!(job.task, Task::Example);
        assert_eq!((job.group, job.n_max), (None, 8));
    }

    #[test]
    fn missing_prime_is_a_usage_error() {
        let Err(JobError::Usage(msg)) = parse("limits --group S4") else { panic!("accepted") };
        assert!(msg.contains("--p") && msg.contains("Usage"), "{msg}");
    }

    #[test]
    fn bad_inputs_are_rejected() {
        assert!(parse("limits --group S4 --p 2 --collection nonsense").is_err());
        assert!(parse("limits --group S4 --p 4").is_err());
        assert!(parse("limits --group S4 --p 2 --n 100").is_err());
        assert!(parse("stable --group S4 --p 2 --mode fast").is_err());
        let job = parse("classify --group S4 --p 5").unwrap();
        assert!(matches!(job.run(), Err(JobError::Usage(_))));
        let job = parse("classify --group S4 --p 5 --allow-coprime").unwrap();
        assert!(job.run().is_ok());
    }

    #[test]
    fn flags_override_the_config() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.toml");
        std::fs::write(&path, "max_degree = 3\nformat = \"text-table\"\nmode = \"sequential\"\n").unwrap();
        let cfg = path.display().to_string();
        let job = parse(&format!("stable --group S3 --p 3 --n 3 --config {cfg}")).unwrap();
        assert_eq!((job.format, job.mode), (Format::TextTable, ExecMode::Sequential));
        let job = parse(&format!("stable --group S3 --p 3 --n 3 --config {cfg} --format json --mode parallel")).unwrap();
        assert_eq!((job.format, job.mode), (Format::Json, ExecMode::Parallel));
        assert!(parse(&format!("stable --group S3 --p 3 --n 4 --config {cfg}")).is_err());
    }
}
