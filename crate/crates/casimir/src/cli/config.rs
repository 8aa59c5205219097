//! Run configuration: clap argument definitions, the optional JSON
//! configuration file, and their merge into a validated [`RunConfig`].
//!
//! Every file key is optional; defaults are the Ge experiment values
//! (R = 15.10 cm, T = 300 K, intrinsic-Ge material parameters). Command-line
//! flags override file values.

use super::CliError;
use crate::dielectric::{CarrierSpecies, MaterialModel, ModelKind, OscillatorModel};
use crate::engine::EngineConfig;
use crate::quantities::Geometry;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(name = "casimir", version, about = "Thermal sphere-plate Casimir force for intrinsic Ge under four dielectric-response models")]
pub struct Cli {
    /// JSON configuration file; flags override its values
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Force magnitude at a single separation for one model
    Force(PointArgs),
    /// Forces over a separation range
    Sweep(SweepArgs),
    /// Side-by-side model comparison with the ordering and near-identity checks
    Compare(CompareArgs),
    /// Recompute the published five-separation table and diff against it
    Table1(Table1Args),
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Sphere radius in cm
    #[arg(long = "R", value_name = "CM")]
    pub sphere_radius_cm: Option<f64>,

    /// Temperature in K
    #[arg(long = "T", value_name = "K")]
    pub temperature_k: Option<f64>,

    /// Engine relative tolerance (default 1e-10)
    #[arg(long = "rel-tol", value_name = "TOL")]
    pub rel_tol: Option<f64>,

    /// Output format
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,

    /// Write the report to this file instead of stdout
    #[arg(long, value_name = "PATH")]
    pub output: Option<PathBuf>,

    /// Decimal places for human-readable force values (default 2)
    #[arg(long, value_name = "N")]
    pub precision: Option<usize>,

    /// Include convergence metadata (and per-term breakdowns in JSON)
    #[arg(long)]
    pub verbose: bool,
}

#[derive(Debug, Args)]
pub struct PointArgs {
    /// Material model: neglected, drude, plasma, or diffusion
    #[arg(long, value_name = "MODEL")]
    pub model: Option<String>,

    /// Separation in um
    #[arg(long, value_name = "UM")]
    pub a: Option<f64>,

    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Models: "all" or a comma-separated subset
    #[arg(long, value_name = "MODELS")]
    pub model: Option<String>,

    /// Separation range start:stop:step in um
    #[arg(long = "a-range", value_name = "START:STOP:STEP")]
    pub a_range: Option<String>,

    /// Single separation in um (alternative to --a-range)
    #[arg(long, value_name = "UM")]
    pub a: Option<f64>,

    /// Evaluate sweep points one at a time instead of in parallel
    #[arg(long)]
    pub sequential: bool,

    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// Models to compare: "all" or >= 2 comma-separated names
    #[arg(long, value_name = "MODELS")]
    pub model: Option<String>,

    /// Separation range start:stop:step in um
    #[arg(long = "a-range", value_name = "START:STOP:STEP")]
    pub a_range: Option<String>,

    /// Single separation in um
    #[arg(long, value_name = "UM")]
    pub a: Option<f64>,

    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct Table1Args {
    /// Exit with status 3 if any entry misses its tolerance
    #[arg(long)]
    pub check: bool,

    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Human,
    Csv,
    Json,
}

/// Separation specification in a configuration file.
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RangeSpec {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

/// Material override block; any omitted part keeps the Ge preset.
#[derive(Debug, Clone, Copy, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct MaterialConfig {
    pub oscillator: Option<OscillatorModel>,
    pub electrons: Option<CarrierSpecies>,
    pub holes: Option<CarrierSpecies>,
}

/// Engine override block.
#[derive(Debug, Clone, Copy, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct EngineOverrides {
    pub rel_tol: Option<f64>,
    pub y_tail_cut: Option<f64>,
    pub l_max_hard: Option<u32>,
    pub max_segments: Option<usize>,
}

/// The JSON configuration file. All keys optional.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct FileConfig {
    pub a_um: Option<f64>,
    pub a_range_um: Option<RangeSpec>,
    pub sphere_radius_cm: Option<f64>,
    pub temperature_k: Option<f64>,
    /// "all" or a list of model names
    pub models: Option<serde_json::Value>,
    pub material: Option<MaterialConfig>,
    pub engine: Option<EngineOverrides>,
    pub format: Option<OutputFormat>,
    pub output: Option<PathBuf>,
    pub precision: Option<usize>,
    pub verbose: Option<bool>,
}

impl FileConfig {
    pub fn load(path: &std::path::Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Usage(format!("invalid config {}: {e}", path.display())))
    }

    fn models(&self) -> Result<Option<Vec<ModelKind>>, CliError> {
        match &self.models {
            None => Ok(None),
            Some(serde_json::Value::String(s)) => parse_models(s).map(Some).map_err(CliError::Usage),
            Some(serde_json::Value::Array(items)) => {
                let mut kinds = Vec::new();
                for item in items {
                    let name = item
                        .as_str()
                        .ok_or_else(|| CliError::Usage("models entries must be strings".into()))?;
                    kinds.push(name.parse::<ModelKind>().map_err(CliError::Usage)?);
                }
                if kinds.is_empty() {
                    return Err(CliError::Usage("models list is empty".into()));
                }
                Ok(Some(kinds))
            }
            Some(_) => Err(CliError::Usage("models must be \"all\" or a list of names".into())),
        }
    }
}

/// "all" or comma-separated model names, order-preserving and deduplicated.
pub fn parse_models(s: &str) -> Result<Vec<ModelKind>, String> {
    if s.trim().eq_ignore_ascii_case("all") {
        return Ok(ModelKind::ALL.to_vec());
    }
    let mut kinds: Vec<ModelKind> = Vec::new();
    for piece in s.split(',') {
        let piece = piece.trim();
        if piece.is_empty() {
            continue;
        }
        let kind = piece.parse::<ModelKind>()?;
        if !kinds.contains(&kind) {
            kinds.push(kind);
        }
    }
    if kinds.is_empty() {
        return Err("no models given".into());
    }
    Ok(kinds)
}

/// "start:stop:step" in um into an ascending separation list.
pub fn parse_a_range(s: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("a-range must be start:stop:step, got '{s}'"));
    }
    let nums: Vec<f64> = parts
        .iter()
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("bad number '{p}' in a-range: {e}")))
        .collect::<Result<_, _>>()?;
    expand_range(nums[0], nums[1], nums[2])
}

pub fn expand_range(start: f64, stop: f64, step: f64) -> Result<Vec<f64>, String> {
    if !(start > 0.0) || !(stop >= start) || !(step > 0.0) {
        return Err(format!("a-range must be ascending and positive, got {start}:{stop}:{step}"));
    }
    let mut points = Vec::new();
    let mut i = 0u32;
    loop {
        let a = start + f64::from(i) * step;
        if a > stop * (1.0 + 1e-12) {
            break;
        }
        points.push(a);
        i += 1;
        if i > 100_000 {
            return Err("a-range expands to more than 100000 points".into());
        }
    }
    if points.is_empty() {
        return Err("a-range is empty".into());
    }
    Ok(points)
}

/// Fully resolved configuration for one command invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    /// Separations in um, ascending.
    pub separations_um: Vec<f64>,
    pub sphere_radius_m: f64,
    pub temperature_k: f64,
    pub models: Vec<ModelKind>,
    pub oscillator: OscillatorModel,
    pub electrons: CarrierSpecies,
    pub holes: CarrierSpecies,
    pub engine: EngineConfig,
    pub format: OutputFormat,
    pub output: Option<PathBuf>,
    pub precision: usize,
    pub verbose: bool,
    pub sequential: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            separations_um: Vec::new(),
            sphere_radius_m: 0.1510,
            temperature_k: 300.0,
            models: ModelKind::ALL.to_vec(),
            oscillator: OscillatorModel::germanium(),
            electrons: CarrierSpecies::germanium_electrons(),
            holes: CarrierSpecies::germanium_holes(),
            engine: EngineConfig::default(),
            format: OutputFormat::Human,
            output: None,
            precision: 2,
            verbose: false,
            sequential: false,
        }
    }
}

impl RunConfig {
    /// Defaults, then the configuration file, then nothing else; commands
    /// apply their own flags afterwards.
    pub fn from_file(file: Option<&FileConfig>) -> Result<Self, CliError> {
        let mut cfg = RunConfig::default();
        let Some(file) = file else { return Ok(cfg) };

        if let Some(range) = file.a_range_um {
            cfg.separations_um = expand_range(range.start, range.stop, range.step).map_err(CliError::Usage)?;
        } else if let Some(a) = file.a_um {
            cfg.separations_um = vec![a];
        }
        if let Some(r) = file.sphere_radius_cm {
            cfg.sphere_radius_m = r * 1e-2;
        }
        if let Some(t) = file.temperature_k {
            cfg.temperature_k = t;
        }
        if let Some(models) = file.models()? {
            cfg.models = models;
        }
        if let Some(material) = &file.material {
            if let Some(osc) = material.oscillator {
                cfg.oscillator = osc;
            }
            if let Some(e) = material.electrons {
                cfg.electrons = e;
            }
            if let Some(h) = material.holes {
                cfg.holes = h;
            }
        }
        if let Some(engine) = &file.engine {
            if let Some(v) = engine.rel_tol {
                cfg.engine.rel_tol = v;
            }
            if let Some(v) = engine.y_tail_cut {
                cfg.engine.y_tail_cut = v;
            }
            if let Some(v) = engine.l_max_hard {
                cfg.engine.l_max_hard = v;
            }
            if let Some(v) = engine.max_segments {
                cfg.engine.max_segments = v;
            }
        }
        if let Some(f) = file.format {
            cfg.format = f;
        }
        if let Some(o) = &file.output {
            cfg.output = Some(o.clone());
        }
        if let Some(p) = file.precision {
            cfg.precision = p;
        }
        if let Some(v) = file.verbose {
            cfg.verbose = v;
        }
        Ok(cfg)
    }

    pub fn apply_common(&mut self, common: &CommonArgs) {
        if let Some(r) = common.sphere_radius_cm {
            self.sphere_radius_m = r * 1e-2;
        }
        if let Some(t) = common.temperature_k {
            self.temperature_k = t;
        }
        if let Some(tol) = common.rel_tol {
            self.engine.rel_tol = tol;
        }
        if let Some(f) = common.format {
            self.format = f;
        }
        if let Some(o) = &common.output {
            self.output = Some(o.clone());
        }
        if let Some(p) = common.precision {
            self.precision = p;
        }
        if common.verbose {
            self.verbose = true;
        }
    }

    pub fn geometry(&self, a_um: f64) -> Result<Geometry, CliError> {
        Geometry::new(a_um * 1e-6, self.sphere_radius_m, self.temperature_k)
            .map_err(|e| CliError::Usage(e.to_string()))
    }

    pub fn material(&self, kind: ModelKind) -> MaterialModel {
        MaterialModel::from_parts(kind, self.oscillator, self.electrons, self.holes)
    }

    pub fn validate_separations(&self) -> Result<(), CliError> {
        if self.separations_um.is_empty() {
            return Err(CliError::Usage("no separation given (use --a or --a-range)".into()));
        }
        if !self.separations_um.windows(2).all(|w| w[0] < w[1]) {
            return Err(CliError::Usage("separations must be strictly ascending".into()));
        }
        if self.separations_um.iter().any(|a| !(*a > 0.0)) {
            return Err(CliError::Usage("separations must be positive".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_models_variants() {
        assert_eq!(parse_models("all").unwrap(), ModelKind::ALL.to_vec());
        assert_eq!(
            parse_models("drude,plasma").unwrap(),
            vec![ModelKind::Drude, ModelKind::Plasma]
        );
        assert_eq!(parse_models("drude,drude").unwrap(), vec![ModelKind::Drude]);
        assert!(parse_models("").is_err());
        assert!(parse_models("metal").is_err());
    }

    #[test]
    fn parse_a_range_variants() {
        let pts = parse_a_range("0.6:1.0:0.1").unwrap();
        assert_eq!(pts.len(), 5);
        assert!((pts[0] - 0.6).abs() < 1e-12);
        assert!((pts[4] - 1.0).abs() < 1e-12);
        assert!(parse_a_range("1.0:0.6:0.1").is_err());
        assert!(parse_a_range("0.6:1.0:0").is_err());
        assert!(parse_a_range("0.6:1.0").is_err());
        assert_eq!(parse_a_range("0.8:0.8:0.1").unwrap(), vec![0.8]);
    }

    #[test]
    fn file_config_defaults_and_merge() {
        let file: FileConfig = serde_json::from_str(
            r#"{
                "a_range_um": {"start": 0.6, "stop": 0.8, "step": 0.1},
                "temperature_k": 350.0,
                "models": ["drude", "neglected"],
                "engine": {"rel_tol": 1e-8},
                "precision": 4
            }"#,
        )
        .unwrap();
        let cfg = RunConfig::from_file(Some(&file)).unwrap();
        assert_eq!(cfg.separations_um.len(), 3);
        assert_eq!(cfg.temperature_k, 350.0);
        assert_eq!(cfg.sphere_radius_m, 0.1510);
        assert_eq!(cfg.models, vec![ModelKind::Drude, ModelKind::Neglected]);
        assert_eq!(cfg.engine.rel_tol, 1e-8);
        assert_eq!(cfg.engine.y_tail_cut, 60.0);
        assert_eq!(cfg.precision, 4);
    }

    #[test]
    fn file_config_rejects_unknown_keys_and_bad_material() {
        assert!(serde_json::from_str::<FileConfig>(r#"{"separation": 1.0}"#).is_err());
        // oscillator with eps_static < eps_inf must fail validation in serde
        let bad = r#"{"material": {"oscillator": {"eps_inf": 2.0, "eps_static": 1.5, "omega_0": 1e15}}}"#;
        assert!(serde_json::from_str::<FileConfig>(bad).is_err());
    }

    #[test]
    fn empty_models_list_is_usage_error() {
        let file: FileConfig = serde_json::from_str(r#"{"models": []}"#).unwrap();
        assert!(matches!(RunConfig::from_file(Some(&file)), Err(CliError::Usage(_))));
    }
}
