//! Flat `key = value` configuration files, merged under command-line flags.

use std::ffi::OsString;
use std::path::Path;

use super::CliError;

/// Parses `key = value` lines; blank lines and `#` comments are skipped.
pub fn parse_config(text: &str) -> Result<Vec<(String, String)>, CliError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| CliError::Config(format!("line {}: expected key = value, got {line:?}", i + 1)))?;
        let key = key.trim();
        if key.is_empty() {
            return Err(CliError::Config(format!("line {}: empty key", i + 1)));
        }
        out.push((key.replace('_', "-"), value.trim().to_string()));
    }
    Ok(out)
}

/// Finds `--config <path>` or `--config=<path>` in raw arguments.
fn config_path(args: &[OsString]) -> Option<OsString> {
    let mut iter = args.iter();
    while let Some(a) = iter.next() {
        let s = a.to_string_lossy();
        if s == "--config" {
            return iter.next().cloned();
        }
        if let Some(rest) = s.strip_prefix("--config=") {
            return Some(rest.into());
        }
    }
    None
}

/// Inserts the config file's entries as flags right after the subcommand
/// path, so flags given on the command line (which come later) override
/// them. Boolean entries become bare flags when true and vanish when false.
pub fn merge_config(args: Vec<OsString>, depth: usize) -> Result<Vec<OsString>, CliError> {
    let Some(path) = config_path(&args) else {
        return Ok(args);
    };
    let text = std::fs::read_to_string(Path::new(&path))
        .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", Path::new(&path).display())))?;
    let mut injected = Vec::new();
    for (key, value) in parse_config(&text)? {
        match value.as_str() {
            "true" => injected.push(format!("--{key}").into()),
            "false" => {}
            _ => {
                injected.push(format!("--{key}").into());
                injected.push(value.into());
            }
        }
    }
    let split = depth.min(args.len());
    let mut merged: Vec<OsString> = args[..split].to_vec();
    merged.extend(injected);
    merged.extend_from_slice(&args[split..]);
    Ok(merged)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_flat_files() {
        let cfg = parse_config("# universe\nm = 32\n\nk_max=12\nverify = all\n").unwrap();
        assert_eq!(
            cfg,
            vec![
                ("m".to_string(), "32".to_string()),
                ("k-max".to_string(), "12".to_string()),
                ("verify".to_string(), "all".to_string())
            ]
        );
        assert!(parse_config("m 32").is_err());
        assert!(parse_config("= 3").is_err());
    }
}
