//! Density sweep benchmark: inject noise, run each filter, score the result.
//!
//! For every image, density and seed a single noisy image is generated and
//! shared by all filters. Records come back in plan order (image, density,
//! seed, filter) whatever order the jobs finish in, so two runs of one plan
//! produce identical CSVs apart from the `runtime_ms` column.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::filters::{Execution, Filter, FilterKind, FilterParams};
use crate::image::Image;
use crate::metrics::{self, format_metric};
use crate::noise::{self, NoiseSpec};
use crate::pnm;

pub const CSV_HEADER: [&str; 8] = [
    "image",
    "filter",
    "density",
    "seed",
    "mse",
    "psnr_db",
    "ief",
    "runtime_ms",
];

/// 0.1, 0.2, ..., 0.9
pub fn default_densities() -> Vec<f64> {
    (1..=9).map(|k| k as f64 / 10.0).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepPlan {
    pub inputs: Vec<PathBuf>,
    pub densities: Vec<f64>,
    pub filters: Vec<FilterKind>,
    pub seeds: Vec<u64>,
    pub salt_fraction: f64,
    pub params: FilterParams,
    pub csv: PathBuf,
    pub execution: Execution,
}

impl SweepPlan {
    pub fn new(inputs: Vec<PathBuf>, csv: PathBuf) -> Self {
        Self {
            inputs,
            densities: default_densities(),
            filters: FilterKind::ALL.to_vec(),
            seeds: vec![1],
            salt_fraction: 0.5,
            params: FilterParams::default(),
            csv,
            execution: Execution::Parallel,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.inputs.is_empty() {
            return Err(Error::InvalidPlan("no input images".into()));
        }
        validate_settings(
            &self.densities,
            &self.filters,
            &self.seeds,
            self.salt_fraction,
        )
    }
}

fn validate_settings(
    densities: &[f64],
    filters: &[FilterKind],
    seeds: &[u64],
    salt_fraction: f64,
) -> Result<()> {
    if densities.is_empty() {
        return Err(Error::InvalidPlan("no densities".into()));
    }
    if let Some(d) = densities.iter().find(|&&d| !(d > 0.0 && d <= 1.0)) {
        return Err(Error::InvalidPlan(format!("density {d} outside (0, 1]")));
    }
    if filters.is_empty() {
        return Err(Error::InvalidPlan("no filters".into()));
    }
    if seeds.is_empty() {
        return Err(Error::InvalidPlan("at least one seed is required".into()));
    }
    NoiseSpec::new(0.0, salt_fraction, 0)?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub image: String,
    pub filter: FilterKind,
    pub density: f64,
    pub seed: u64,
    pub mse: f64,
    pub psnr_db: f64,
    /// NaN when the noisy image happens to equal the original.
    pub ief: f64,
    pub runtime_ms: f64,
}

impl SweepRecord {
    fn csv_fields(&self) -> [String; 8] {
        [
            self.image.clone(),
            self.filter.designator().to_string(),
            format_metric(self.density),
            self.seed.to_string(),
            format_metric(self.mse),
            format_metric(self.psnr_db),
            format_metric(self.ief),
            format_metric(self.runtime_ms),
        ]
    }
}

/// Loads every input before any filtering, so a bad path fails fast.
pub fn load_inputs(paths: &[PathBuf]) -> Result<Vec<(String, Image)>> {
    paths
        .iter()
        .map(|path| Ok((image_name(path), pnm::read_pnm_file(path)?)))
        .collect()
}

fn image_name(path: &Path) -> String {
    path.file_stem()
        .or_else(|| path.file_name())
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

/// Runs the sweep over in-memory images.
pub fn sweep_images(
    images: &[(String, Image)],
    densities: &[f64],
    filters: &[FilterKind],
    seeds: &[u64],
    salt_fraction: f64,
    params: FilterParams,
    execution: Execution,
) -> Result<Vec<SweepRecord>> {
    validate_settings(densities, filters, seeds, salt_fraction)?;
    let mut jobs = Vec::new();
    for (name, img) in images {
        for &density in densities {
            for &seed in seeds {
                jobs.push((
                    name.as_str(),
                    img,
                    NoiseSpec::new(density, salt_fraction, seed)?,
                ));
            }
        }
    }

    let run_job = |&(name, original, spec): &(&str, &Image, NoiseSpec)| {
        let noisy = noise::inject(original, &spec);
        filters
            .iter()
            .map(|&kind| {
                let start = Instant::now();
                let restored = Filter::new(kind, params).apply_image(&noisy, execution);
                let runtime_ms = start.elapsed().as_secs_f64() * 1e3;
                let mse = metrics::mse(original, &restored).expect("same shape");
                let ief = match metrics::ief(original, &restored, &noisy) {
                    Ok(v) => v,
                    Err(Error::UndefinedMetric(_)) => f64::NAN,
                    Err(e) => panic!("unexpected metric failure: {e}"),
                };
                SweepRecord {
                    image: name.to_string(),
                    filter: kind,
                    density: spec.density(),
                    seed: spec.seed(),
                    mse,
                    psnr_db: metrics::psnr_from_mse(mse),
                    ief,
                    runtime_ms,
                }
            })
            .collect::<Vec<_>>()
    };

    let grouped: Vec<Vec<SweepRecord>> = match execution {
        Execution::Serial => jobs.iter().map(run_job).collect(),
        Execution::Parallel => jobs.par_iter().map(run_job).collect(),
    };
    Ok(grouped.into_iter().flatten().collect())
}

/// Loads the plan's images and runs the sweep. Does not write the CSV.
pub fn run_sweep(plan: &SweepPlan) -> Result<Vec<SweepRecord>> {
    plan.validate()?;
    let images = load_inputs(&plan.inputs)?;
    sweep_images(
        &images,
        &plan.densities,
        &plan.filters,
        &plan.seeds,
        plan.salt_fraction,
        plan.params,
        plan.execution,
    )
}

pub fn write_records<W: Write>(records: &[SweepRecord], out: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(CSV_HEADER)?;
    for record in records {
        writer.write_record(record.csv_fields())?;
    }
    writer.flush().map_err(|e| Error::io("<csv>", e))?;
    Ok(())
}

pub fn records_to_csv(records: &[SweepRecord]) -> Result<String> {
    let mut buf = Vec::new();
    write_records(records, &mut buf)?;
    Ok(String::from_utf8(buf).expect("CSV output is UTF-8"))
}

/// Writes through a temporary file in the target directory, then renames,
/// so an interrupted run never leaves a partial CSV at `path`.
pub fn write_csv_atomic(records: &[SweepRecord], path: &Path) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| Error::io(dir, e))?;
    write_records(records, tmp.as_file_mut())?;
    tmp.as_file()
        .sync_all()
        .map_err(|e| Error::io(tmp.path(), e))?;
    tmp.persist(path).map_err(|e| Error::io(path, e.error))?;
    Ok(())
}

/// Plan settings from a `key = value` file; any field may be absent.
///
/// Keys mirror the CLI flags: `input` (repeatable, comma separated),
/// `densities`, `filters`, `seeds`, `salt-fraction`, `w-init`, `h`, `w-max`
/// and `csv`. Blank lines and lines starting with `#` are ignored.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PlanSettings {
    pub inputs: Vec<PathBuf>,
    pub densities: Option<Vec<f64>>,
    pub filters: Option<Vec<FilterKind>>,
    pub seeds: Option<Vec<u64>>,
    pub salt_fraction: Option<f64>,
    pub w_init: Option<usize>,
    pub h: Option<usize>,
    pub w_max: Option<usize>,
    pub csv: Option<PathBuf>,
}

impl PlanSettings {
    pub fn parse_config(text: &str) -> Result<Self> {
        let mut settings = PlanSettings::default();
        let mut seen = BTreeMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::InvalidPlan(format!("line {}: expected key = value", lineno + 1))
            })?;
            let (key, value) = (key.trim(), value.trim());
            let at = |e: Error| Error::InvalidPlan(format!("line {}: {e}", lineno + 1));
            if key != "input" && seen.insert(key.to_string(), lineno).is_some() {
                return Err(Error::InvalidPlan(format!(
                    "line {}: duplicate key {key}",
                    lineno + 1
                )));
            }
            match key {
                "input" => settings.inputs.extend(split_list(value).map(PathBuf::from)),
                "densities" => settings.densities = Some(parse_densities(value).map_err(at)?),
                "filters" => settings.filters = Some(parse_filters(value).map_err(at)?),
                "seeds" => settings.seeds = Some(parse_seeds(value).map_err(at)?),
                "salt-fraction" => {
                    settings.salt_fraction = Some(parse_num(key, value).map_err(at)?)
                }
                "w-init" => settings.w_init = Some(parse_num(key, value).map_err(at)?),
                "h" => settings.h = Some(parse_num(key, value).map_err(at)?),
                "w-max" => settings.w_max = Some(parse_num(key, value).map_err(at)?),
                "csv" => settings.csv = Some(PathBuf::from(value)),
                other => {
                    return Err(Error::InvalidPlan(format!(
                        "line {}: unknown key {other:?}",
                        lineno + 1
                    )))
                }
            }
        }
        Ok(settings)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse_config(&text)
    }

    /// Fields set in `over` replace those in `self`; inputs given in `over`
    /// replace the whole input list.
    pub fn overlay(mut self, over: PlanSettings) -> Self {
        if !over.inputs.is_empty() {
            self.inputs = over.inputs;
        }
        self.densities = over.densities.or(self.densities);
        self.filters = over.filters.or(self.filters);
        self.seeds = over.seeds.or(self.seeds);
        self.salt_fraction = over.salt_fraction.or(self.salt_fraction);
        self.w_init = over.w_init.or(self.w_init);
        self.h = over.h.or(self.h);
        self.w_max = over.w_max.or(self.w_max);
        self.csv = over.csv.or(self.csv);
        self
    }

    pub fn into_plan(self) -> Result<SweepPlan> {
        let csv = self
            .csv
            .ok_or_else(|| Error::InvalidPlan("no CSV output path (--csv)".into()))?;
        let mut plan = SweepPlan::new(self.inputs, csv);
        if let Some(d) = self.densities {
            plan.densities = d;
        }
        if let Some(f) = self.filters {
            plan.filters = f;
        }
        if let Some(s) = self.seeds {
            plan.seeds = s;
        }
        if let Some(s) = self.salt_fraction {
            plan.salt_fraction = s;
        }
        let defaults = FilterParams::default();
        plan.params = FilterParams::new(
            self.w_init.unwrap_or(defaults.w_init()),
            self.h.unwrap_or(defaults.h()),
            self.w_max.unwrap_or(defaults.w_max()),
        )?;
        plan.validate()?;
        Ok(plan)
    }
}

fn split_list(value: &str) -> impl Iterator<Item = &str> {
    value.split(',').map(str::trim).filter(|s| !s.is_empty())
}

fn parse_num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::InvalidPlan(format!("{key}: cannot parse {value:?}")))
}

pub fn parse_densities(value: &str) -> Result<Vec<f64>> {
    split_list(value)
        .map(|v| parse_num("densities", v))
        .collect()
}

pub fn parse_seeds(value: &str) -> Result<Vec<u64>> {
    split_list(value).map(|v| parse_num("seeds", v)).collect()
}

pub fn parse_filters(value: &str) -> Result<Vec<FilterKind>> {
    split_list(value).map(str::parse).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth;

    #[test]
    fn default_densities_are_exact_tenths() {
        let d = default_densities();
        assert_eq!(d.len(), 9);
        assert_eq!(d[2], 0.3);
        assert_eq!(format_metric(d[6]), "0.7000");
    }

    #[test]
    fn row_count_and_order() {
        let images = vec![
            ("a".to_string(), synth::scene(24, 24, 1)),
            ("b".to_string(), synth::gradient(24, 24)),
        ];
        let records = sweep_images(
            &images,
            &[0.2, 0.6],
            &FilterKind::ALL,
            &[1, 2, 3],
            0.5,
            FilterParams::default(),
            Execution::Parallel,
        )
        .unwrap();
        assert_eq!(records.len(), 2 * 2 * 6 * 3);
        assert_eq!(records[0].image, "a");
        assert_eq!(records[0].filter, FilterKind::Mf);
        assert_eq!(records[5].filter, FilterKind::Pa);
        assert_eq!(records[6].seed, 2);
        assert_eq!(records[18].density, 0.6);
        assert_eq!(records[36].image, "b");
    }

    #[test]
    fn settings_validation() {
        let img = vec![("x".to_string(), synth::gradient(8, 8))];
        let p = FilterParams::default();
        let run = |d: &[f64], f: &[FilterKind], s: &[u64]| {
            sweep_images(&img, d, f, s, 0.5, p, Execution::Serial)
        };
        assert!(run(&[0.0], &[FilterKind::Pa], &[1]).is_err());
        assert!(run(&[1.5], &[FilterKind::Pa], &[1]).is_err());
        assert!(run(&[0.5], &[], &[1]).is_err());
        assert!(run(&[0.5], &[FilterKind::Pa], &[]).is_err());
        assert!(run(&[1.0], &[FilterKind::Pa], &[1]).is_ok());
    }

    #[test]
    fn csv_layout() {
        let record = SweepRecord {
            image: "lena".into(),
            filter: FilterKind::AwmfApprox,
            density: 0.1,
            seed: 7,
            mse: 0.0,
            psnr_db: f64::INFINITY,
            ief: f64::INFINITY,
            runtime_ms: 1.23456,
        };
        let csv = records_to_csv(&[record]).unwrap();
        assert_eq!(
            csv,
            "image,filter,density,seed,mse,psnr_db,ief,runtime_ms\n\
             lena,awmf-approx,0.1000,7,0.0000,inf,inf,1.2346\n"
        );
    }

    #[test]
    fn config_parsing_and_overlay() {
        let text = "# sweep plan\n\
                    input = a.pgm, b.ppm\n\
                    input = c.pgm\n\
                    densities = 0.1,0.5\n\
                    filters = pa, mf\n\
                    seeds = 3\n\
                    w-max = 7\n\
                    csv = out.csv\n";
        let file = PlanSettings::parse_config(text).unwrap();
        assert_eq!(file.inputs.len(), 3);
        assert_eq!(file.filters, Some(vec![FilterKind::Pa, FilterKind::Mf]));

        let flags = PlanSettings {
            seeds: Some(vec![9, 10]),
            csv: Some("flag.csv".into()),
            ..Default::default()
        };
        let plan = file.overlay(flags).into_plan().unwrap();
        assert_eq!(plan.seeds, vec![9, 10]);
        assert_eq!(plan.densities, vec![0.1, 0.5]);
        assert_eq!(plan.csv, PathBuf::from("flag.csv"));
        assert_eq!(plan.params.w_max(), 7);
        assert_eq!(plan.inputs.len(), 3);
    }

    #[test]
    fn config_errors() {
        assert!(PlanSettings::parse_config("densities 0.1").is_err());
        assert!(PlanSettings::parse_config("colour = red").is_err());
        assert!(PlanSettings::parse_config("filters = pa, foo").is_err());
        assert!(PlanSettings::parse_config("seeds = 1\nseeds = 2").is_err());
        assert!(PlanSettings::parse_config("seeds = -1").is_err());
        let no_csv = PlanSettings::parse_config("input = a.pgm").unwrap();
        assert!(no_csv.into_plan().is_err());
        let bad_window = PlanSettings::parse_config("input = a.pgm\ncsv = x\nw-max = 8").unwrap();
        assert!(matches!(
            bad_window.into_plan(),
            Err(Error::InvalidParams(_))
        ));
    }

    #[test]
    fn missing_input_aborts_before_filtering() {
        let dir = tempfile::tempdir().unwrap();
        let plan = SweepPlan::new(
            vec![dir.path().join("missing.pgm")],
            dir.path().join("out.csv"),
        );
        assert!(matches!(run_sweep(&plan), Err(Error::Io { .. })));
    }
}
