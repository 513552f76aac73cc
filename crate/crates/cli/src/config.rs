//! Parameter resolution: defaults, then preset, then config file, then flags.

use crate::args::GlobalArgs;
use crate::error::CliError;
use crate::presets::PresetSpec;
use kgpdm::PhysicalConfig;
use std::path::Path;

const KEYS: [&str; 7] = ["m0", "m1", "alpha", "eta", "beta", "hbar", "c"];

/// Parse flat `key = value` text. Blank lines and `#` comments are ignored;
/// a later assignment to the same key wins.
pub fn parse_config(text: &str) -> Result<Vec<(String, f64)>, CliError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let lineno = i + 1;
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::usage(format!("config line {lineno}: expected key=value")))?;
        let key = k.trim();
        if !KEYS.contains(&key) {
            return Err(CliError::usage(format!("config line {lineno}: unknown key '{key}'")));
        }
        let value = v
            .trim()
            .parse::<f64>()
            .map_err(|_| CliError::usage(format!("config line {lineno}: '{}' is not a number", v.trim())))?;
        out.push((key.to_string(), value));
    }
    Ok(out)
}

pub fn load_config(path: &Path) -> Result<Vec<(String, f64)>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read config {}: {e}", path.display())))?;
    parse_config(&text)
}

pub fn resolve(global: &GlobalArgs, preset: Option<&PresetSpec>) -> Result<PhysicalConfig, CliError> {
    let mut cfg = PhysicalConfig::default();
    if let Some(p) = preset {
        for &(k, v) in &p.params {
            cfg = cfg.with_param(k, v)?;
        }
    }
    if let Some(path) = &global.config {
        for (k, v) in load_config(path)? {
            cfg = cfg.with_param(&k, v)?;
        }
    }
    for (k, v) in global.flag_params() {
        cfg = cfg.with_param(k, v)?;
    }
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::Preset;

    #[test]
    fn parses_flat_file() {
        let t = "# comment\n\nalpha = 0.3\neta=0.25\n  m1 =0.1  \nalpha=0.2\n";
        let v = parse_config(t).unwrap();
        assert_eq!(v.len(), 4);
        assert_eq!(v[3], ("alpha".to_string(), 0.2));
    }

    #[test]
    fn rejects_bad_lines() {
        for t in ["alpha 0.3", "gamma=1", "eta=abc"] {
            assert!(matches!(parse_config(t), Err(CliError::Usage(_))), "{t}");
        }
    }

    #[test]
    fn precedence_order() {
        let dir = std::env::temp_dir().join(format!("kgpdm-config-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("params.cfg");
        std::fs::write(&path, "eta=0.5\nm1=0.2\n").unwrap();
        let global = GlobalArgs {
            config: Some(path),
            m1: Some(0.3),
            ..Default::default()
        };
        let preset = Preset::Fig1.spec();
        let cfg = resolve(&global, Some(&preset)).unwrap();
        // preset alpha, config eta, flag m1, default m0
        assert_eq!((cfg.alpha(), cfg.eta(), cfg.m1(), cfg.m0()), (0.3, 0.5, 0.3, 1.0));
        std::fs::remove_dir_all(dir).unwrap();
    }

    #[test]
    fn invalid_values_are_usage_errors() {
        let global = GlobalArgs {
            alpha: Some(0.0),
            ..Default::default()
        };
        assert!(matches!(resolve(&global, None), Err(CliError::Usage(_))));
    }
}
