//! Run configuration: defaults, optional key=value config file, and
//! command-line flags, merged in that order (flags win).
//!
//! The config file is flat text: one `key=value` per line, `#` comments
//! and blank lines skipped. List values are comma-separated. Keys use
//! the flag spellings: genus, order, margin, gauge, initial-data,
//! format, out, suite, genus-max.

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;

use quintic_gw::feynman::Gauge;
use quintic_gw::rat::{format_rat, parse_rat};
use quintic_gw::xpoly::XPoly;
use quintic_gw::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
}

impl OutputFormat {
    fn parse(s: &str) -> Result<OutputFormat> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(Error::InvalidInput(format!(
                "unknown format '{other}' (expected json or csv)"
            ))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
        }
    }
}

/// Everything a command needs, fully resolved.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub genus: u32,
    pub order: usize,
    pub margin: usize,
    pub gauge: Gauge,
    pub initial_data: Option<PathBuf>,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
    pub suite: String,
    pub genus_max: u32,
}

/// Unmerged option set; both the flag layer and the file layer produce
/// one of these.
#[derive(Clone, Debug, Default)]
pub struct ConfigLayer {
    pub genus: Option<u32>,
    pub order: Option<usize>,
    pub margin: Option<usize>,
    pub gauge: Option<String>,
    pub initial_data: Option<PathBuf>,
    pub format: Option<String>,
    pub out: Option<PathBuf>,
    pub suite: Option<String>,
    pub genus_max: Option<u32>,
}

impl ConfigLayer {
    /// Fills any unset field from the other layer.
    fn or(self, fallback: ConfigLayer) -> ConfigLayer {
        ConfigLayer {
            genus: self.genus.or(fallback.genus),
            order: self.order.or(fallback.order),
            margin: self.margin.or(fallback.margin),
            gauge: self.gauge.or(fallback.gauge),
            initial_data: self.initial_data.or(fallback.initial_data),
            format: self.format.or(fallback.format),
            out: self.out.or(fallback.out),
            suite: self.suite.or(fallback.suite),
            genus_max: self.genus_max.or(fallback.genus_max),
        }
    }
}

fn parse_num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .trim()
        .parse()
        .map_err(|_| Error::InvalidInput(format!("bad value '{value}' for {key}")))
}

/// Reads a flat key=value file into a layer.
pub fn load_file(path: &PathBuf) -> Result<ConfigLayer> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    let mut layer = ConfigLayer::default();
    for (lineno, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let (key, value) = t.split_once('=').ok_or_else(|| {
            Error::InvalidInput(format!(
                "{} line {}: expected key=value",
                path.display(),
                lineno + 1
            ))
        })?;
        let key = key.trim();
        let value = value.trim();
        match key {
            "genus" => layer.genus = Some(parse_num(key, value)?),
            "order" => layer.order = Some(parse_num(key, value)?),
            "margin" => layer.margin = Some(parse_num(key, value)?),
            "gauge" => layer.gauge = Some(value.to_string()),
            "initial-data" => layer.initial_data = Some(PathBuf::from(value)),
            "format" => layer.format = Some(value.to_string()),
            "out" => layer.out = Some(PathBuf::from(value)),
            "suite" => layer.suite = Some(value.to_string()),
            "genus-max" => layer.genus_max = Some(parse_num(key, value)?),
            other => {
                return Err(Error::InvalidInput(format!(
                    "{} line {}: unknown key '{other}'",
                    path.display(),
                    lineno + 1
                )))
            }
        }
    }
    Ok(layer)
}

/// Parses "c1a=…;c1b=…;c2=…;c3=…" where each value is a comma-separated
/// coefficient list, constant term first. Missing parts stay zero; the
/// degree bounds are enforced before the gauge is accepted. The names
/// "zero" and "special" select the two distinguished gauges.
pub fn parse_gauge(s: &str) -> Result<Gauge> {
    match s.trim() {
        "zero" => return Ok(Gauge::zero()),
        "special" => return Ok(Gauge::special()),
        _ => {}
    }
    let mut gauge = Gauge::zero();
    for part in s.split(';') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (name, list) = part
            .split_once('=')
            .ok_or_else(|| Error::InvalidInput(format!("bad gauge part '{part}'")))?;
        let coeffs = list
            .split(',')
            .map(parse_rat)
            .collect::<Result<Vec<_>>>()?;
        let poly = XPoly::new(coeffs);
        match name.trim() {
            "c1a" => gauge.c1a = poly,
            "c1b" => gauge.c1b = poly,
            "c2" => gauge.c2 = poly,
            "c3" => gauge.c3 = poly,
            other => {
                return Err(Error::InvalidInput(format!(
                    "unknown gauge coefficient '{other}'"
                )))
            }
        }
    }
    gauge.validate()?;
    Ok(gauge)
}

/// The inverse of [`parse_gauge`], used when a report embeds its config.
pub fn gauge_lists(gauge: &Gauge) -> BTreeMap<&'static str, Vec<String>> {
    let list = |p: &XPoly| p.coeffs().iter().map(format_rat).collect();
    BTreeMap::from([
        ("c1a", list(&gauge.c1a)),
        ("c1b", list(&gauge.c1b)),
        ("c2", list(&gauge.c2)),
        ("c3", list(&gauge.c3)),
    ])
}

/// Largest ambiguity degree the solve at this genus must pin down.
pub fn ambiguity_degree(genus: u32) -> usize {
    match genus {
        0 => 0,
        1 => 1,
        g => 3 * g as usize - 3,
    }
}

/// Solve-side guard: the truncation must leave `margin` verified orders
/// past the top-genus ambiguity. Identity suites have no fit and skip it.
pub fn ensure_solve_margin(cfg: &RunConfig) -> Result<()> {
    let needed = ambiguity_degree(cfg.genus) + cfg.margin;
    if cfg.order < needed {
        return Err(Error::InvalidInput(format!(
            "order {} cannot verify genus {} with margin {}; need at least {needed}",
            cfg.order, cfg.genus, cfg.margin
        )));
    }
    Ok(())
}

pub fn resolve(
    flags: ConfigLayer,
    config_path: Option<&PathBuf>,
    default_format: OutputFormat,
) -> Result<RunConfig> {
    let merged = match config_path {
        Some(path) => flags.or(load_file(path)?),
        None => flags,
    };
    let genus = merged.genus.unwrap_or(2);
    let order = merged.order.unwrap_or(14);
    let margin = merged.margin.unwrap_or(10);
    // The default is the distinguished gauge of the closed-form tables,
    // so plain solves reproduce the published ambiguity coefficients.
    let gauge = match &merged.gauge {
        Some(s) => parse_gauge(s)?,
        None => Gauge::special(),
    };
    let format = match &merged.format {
        Some(s) => OutputFormat::parse(s)?,
        None => default_format,
    };
    if order < 2 {
        return Err(Error::InvalidInput(format!("order {order} is too small")));
    }
    Ok(RunConfig {
        genus,
        order,
        margin,
        gauge,
        initial_data: merged.initial_data,
        format,
        out: merged.out,
        suite: merged.suite.unwrap_or_else(|| "all".to_string()),
        genus_max: merged.genus_max.unwrap_or(2),
    })
}
