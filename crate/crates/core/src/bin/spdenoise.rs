use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use spdenoise::filters::{trace_pa, Execution, Filter, FilterKind, FilterParams};
use spdenoise::sweep::{self, PlanSettings};
use spdenoise::{metrics, noise, pnm, synth, Error, NoiseSpec};

/// Salt-and-pepper noise injection, removal and benchmarking.
#[derive(Parser)]
#[command(name = "spdenoise", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Corrupt an image with salt-and-pepper noise.
    AddNoise {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
        /// Probability that a sample is corrupted.
        #[arg(long)]
        density: f64,
        /// Probability that a corrupted sample becomes 255.
        #[arg(long, default_value_t = 0.5)]
        salt_fraction: f64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Restore a noisy image with one filter.
    Denoise {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
        /// One of: mf, amf, mdbutmf, mdbptgmf, awmf-approx, pa.
        #[arg(long, default_value = "pa")]
        filter: String,
        #[command(flatten)]
        window: WindowArgs,
        /// Print the window growth of the pa filter at ROW,COL (first channel).
        #[arg(long, value_name = "ROW,COL")]
        trace: Option<String>,
    },
    /// Compare a restored image with the original.
    Metrics {
        #[arg(long)]
        original: PathBuf,
        #[arg(long)]
        restored: PathBuf,
        /// Noisy image; enables the IEF line.
        #[arg(long)]
        noisy: Option<PathBuf>,
    },
    /// Run the density sweep and write a CSV table.
    Sweep {
        /// Input image; repeat or comma-separate for several.
        #[arg(long, value_delimiter = ',')]
        input: Vec<PathBuf>,
        /// Comma-separated densities (default 0.1,...,0.9).
        #[arg(long)]
        densities: Option<String>,
        /// Comma-separated filter designators (default all).
        #[arg(long)]
        filters: Option<String>,
        /// Comma-separated seeds (default 1).
        #[arg(long)]
        seeds: Option<String>,
        #[arg(long)]
        salt_fraction: Option<f64>,
        #[command(flatten)]
        window: WindowArgs,
        /// key = value plan file; flags take precedence.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Output CSV path.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Run everything on the calling thread.
        #[arg(long)]
        serial: bool,
    },
    /// Write the synthetic test corpus as PGM/PPM files.
    GenCorpus {
        /// Output directory.
        #[arg(long)]
        output: PathBuf,
        #[arg(long, default_value_t = 512)]
        size: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Args)]
struct WindowArgs {
    #[arg(long)]
    w_init: Option<usize>,
    #[arg(long = "h")]
    h: Option<usize>,
    #[arg(long)]
    w_max: Option<usize>,
}

impl WindowArgs {
    fn params(&self) -> Result<FilterParams, Error> {
        let d = FilterParams::default();
        FilterParams::new(
            self.w_init.unwrap_or(d.w_init()),
            self.h.unwrap_or(d.h()),
            self.w_max.unwrap_or(d.w_max()),
        )
    }
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::UnknownFilter { .. }
        | Error::InvalidParams(_)
        | Error::InvalidNoise(_)
        | Error::InvalidPlan(_) => 1,
        Error::UndefinedMetric(_) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn run(command: Command) -> Result<(), Error> {
    match command {
        Command::AddNoise {
            input,
            output,
            density,
            salt_fraction,
            seed,
        } => {
            let spec = NoiseSpec::new(density, salt_fraction, seed)?;
            let img = pnm::read_pnm_file(&input)?;
            let noisy = noise::inject(&img, &spec);
            pnm::write_pnm_file(&output, &noisy)?;
            println!(
                "corruption_rate: {:.4}",
                noise::corruption_rate(&img, &noisy)?
            );
        }
        Command::Denoise {
            input,
            output,
            filter,
            window,
            trace,
        } => {
            let kind: FilterKind = filter.parse()?;
            let params = window.params()?;
            let img = pnm::read_pnm_file(&input)?;
            if let Some(at) = trace {
                print_trace(&img, &at, &params)?;
            }
            let start = Instant::now();
            let restored = Filter::new(kind, params).apply_image(&img, Execution::Parallel);
            let elapsed = start.elapsed();
            pnm::write_pnm_file(&output, &restored)?;
            eprintln!("{kind}: {:.1} ms", elapsed.as_secs_f64() * 1e3);
        }
        Command::Metrics {
            original,
            restored,
            noisy,
        } => {
            let original = pnm::read_pnm_file(&original)?;
            let restored = pnm::read_pnm_file(&restored)?;
            let noisy = noisy.map(pnm::read_pnm_file).transpose()?;
            let mse = metrics::mse(&original, &restored)?;
            println!("mse: {}", metrics::format_metric(mse));
            println!(
                "psnr_db: {}",
                metrics::format_metric(metrics::psnr_from_mse(mse))
            );
            if let Some(noisy) = noisy {
                let ief = metrics::ief(&original, &restored, &noisy)?;
                println!("ief: {}", metrics::format_metric(ief));
            }
        }
        Command::Sweep {
            input,
            densities,
            filters,
            seeds,
            salt_fraction,
            window,
            config,
            csv,
            serial,
        } => {
            let base = match &config {
                Some(path) => PlanSettings::load(path)?,
                None => PlanSettings::default(),
            };
            let flags = PlanSettings {
                inputs: input,
                densities: densities
                    .as_deref()
                    .map(sweep::parse_densities)
                    .transpose()?,
                filters: filters.as_deref().map(sweep::parse_filters).transpose()?,
                seeds: seeds.as_deref().map(sweep::parse_seeds).transpose()?,
                salt_fraction,
                w_init: window.w_init,
                h: window.h,
                w_max: window.w_max,
                csv,
            };
            let mut plan = base.overlay(flags).into_plan()?;
            if serial {
                plan.execution = Execution::Serial;
            }
            let start = Instant::now();
            let records = sweep::run_sweep(&plan)?;
            sweep::write_csv_atomic(&records, &plan.csv)?;
            eprintln!(
                "wrote {} rows to {} in {:.2} s",
                records.len(),
                plan.csv.display(),
                start.elapsed().as_secs_f64()
            );
        }
        Command::GenCorpus { output, size, seed } => {
            if size == 0 {
                return Err(Error::InvalidImage("size must be positive".into()));
            }
            std::fs::create_dir_all(&output).map_err(|e| Error::Io {
                path: output.display().to_string(),
                source: e,
            })?;
            for (name, img) in synth::corpus(size, seed) {
                let ext = if img.channels() == 1 { "pgm" } else { "ppm" };
                let path = output.join(format!("{name}.{ext}"));
                pnm::write_pnm_file(&path, &img)?;
                println!("{}", path.display());
            }
        }
    }
    Ok(())
}

fn print_trace(img: &spdenoise::Image, at: &str, params: &FilterParams) -> Result<(), Error> {
    let parsed = at
        .split_once(',')
        .and_then(|(r, c)| Some((r.trim().parse().ok()?, c.trim().parse().ok()?)));
    let (row, col): (usize, usize) = match parsed {
        Some((r, c)) if r < img.height() && c < img.width() => (r, c),
        _ => {
            return Err(Error::InvalidParams(format!(
                "--trace expects ROW,COL inside {}x{}, got {at:?}",
                img.width(),
                img.height()
            )))
        }
    };
    let plane = &img.split_channels()[0];
    let trace = trace_pa(plane, row, col, params);
    println!("trace ({row},{col}): input {}", trace.input);
    for step in &trace.steps {
        println!("  side {} N {}", step.side, step.clean_count);
    }
    println!("  outcome {:?} output {}", trace.outcome, trace.output);
    Ok(())
}
