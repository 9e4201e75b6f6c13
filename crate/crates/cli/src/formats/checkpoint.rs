//! Model checkpoints: a header, the graph and model configuration as
//! `key=value` lines, then one `tensor <name> <rows> <cols>` line per
//! parameter tensor followed by its values in row-major order. Values use
//! the shortest representation that parses back to the same `f64`.

use std::fmt::Write as _;

use sthg_core::model::ModelParams;
use sthg_core::{GraphConfig, ModelConfig};

use crate::config::RunConfig;
use crate::error::{CliError, CliResult, Fields};
use crate::formats::kv::KvEntry;

pub const CHECKPOINT_HEADER: &str = "STHG-CKPT v1";

#[derive(Debug, Clone, PartialEq)]
pub struct Checkpoint {
    pub graph: GraphConfig,
    pub model: ModelConfig,
    pub params: ModelParams,
}

pub fn write_checkpoint(ck: &Checkpoint) -> String {
    let mut out = String::new();
    out.push_str(CHECKPOINT_HEADER);
    out.push('\n');
    let mut entries = RunConfig::graph_entries(&ck.graph);
    entries.extend(RunConfig::model_entries(&ck.model));
    for (k, v) in entries {
        let _ = writeln!(out, "{k}={v}");
    }
    ck.params.visit(|name, rows, cols, values| {
        let _ = writeln!(out, "tensor {name} {rows} {cols}");
        let mut first = true;
        for v in values {
            if !first {
                out.push(' ');
            }
            first = false;
            let _ = write!(out, "{v:e}");
        }
        out.push('\n');
    });
    out
}

pub fn parse_checkpoint(file: &str, text: &str) -> CliResult<Checkpoint> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let perr = |line: usize, field: &str, message: String| CliError::Parse {
        file: file.to_string(),
        line,
        field: field.to_string(),
        message,
    };
    match lines.next() {
        Some((_, h)) if h == CHECKPOINT_HEADER => {}
        _ => return Err(perr(1, "header", format!("expected {CHECKPOINT_HEADER:?}"))),
    }

    let mut entries = Vec::new();
    let mut tensors: Vec<(usize, String, usize, usize, Vec<f64>)> = Vec::new();
    while let Some((line, content)) = lines.next() {
        if content.is_empty() {
            continue;
        }
        if let Some(rest) = content.strip_prefix("tensor ") {
            let mut f = Fields::new(file, line, rest);
            let name = f.next_str("name")?.to_string();
            let rows: usize = f.parse("rows")?;
            let cols: usize = f.parse("cols")?;
            f.end()?;
            let (vline, vtext) = lines
                .next()
                .ok_or_else(|| perr(line + 1, &name, "missing values".into()))?;
            let mut values = Vec::with_capacity(rows * cols);
            for (i, s) in vtext.split_whitespace().enumerate() {
                let v: f64 = s
                    .parse()
                    .map_err(|_| perr(vline, &format!("{name}[{i}]"), format!("cannot parse {s:?}")))?;
                if !v.is_finite() {
                    return Err(perr(vline, &format!("{name}[{i}]"), "not finite".into()));
                }
                values.push(v);
            }
            if values.len() != rows * cols {
                return Err(perr(
                    vline,
                    &name,
                    format!("expected {} values, found {}", rows * cols, values.len()),
                ));
            }
            tensors.push((line, name, rows, cols, values));
        } else if let Some((k, v)) = content.split_once('=') {
            if !tensors.is_empty() {
                return Err(perr(line, k.trim(), "configuration after tensors".into()));
            }
            entries.push(KvEntry {
                key: k.trim().to_string(),
                value: v.trim().to_string(),
                line,
            });
        } else {
            return Err(perr(line, "record", format!("unexpected line {content:?}")));
        }
    }

    let mut cfg = RunConfig::default();
    for e in &entries {
        if !(e.key.starts_with("graph.") || e.key.starts_with("model.")) {
            return Err(perr(e.line, &e.key, "unexpected key in checkpoint".into()));
        }
    }
    cfg.apply(file, &entries)?;

    let mut params = ModelParams::zeros(&cfg.model);
    let mut expected = Vec::new();
    params.visit(|name, r, c, _| expected.push((name.to_string(), r, c)));
    if tensors.len() != expected.len() {
        return Err(CliError::Invalid(format!(
            "{file}: expected {} tensors, found {}",
            expected.len(),
            tensors.len()
        )));
    }
    for ((line, name, r, c, _), (en, er, ec)) in tensors.iter().zip(&expected) {
        if name != en || r != er || c != ec {
            return Err(perr(
                *line,
                name,
                format!("expected tensor {en} of shape {er}x{ec}, found {name} {r}x{c}"),
            ));
        }
    }
    let mut it = tensors.into_iter();
    params.visit_mut(|_, _, _, dst| {
        let (_, _, _, _, values) = it.next().expect("tensor count checked");
        dst.copy_from_slice(&values);
    });
    Ok(Checkpoint {
        graph: cfg.graph,
        model: cfg.model,
        params,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use sthg_core::model::init_params;

    #[test]
    fn round_trip_is_bit_exact() {
        let model = ModelConfig { d_h: 5, ..ModelConfig::default() };
        let mut params = init_params(&model).unwrap();
        params.visit_mut(|_, _, _, v| {
            for (i, x) in v.iter_mut().enumerate() {
                *x += (i as f64) * 1e-17 + 1.0 / 3.0;
            }
        });
        let ck = Checkpoint { graph: GraphConfig::default(), model, params };
        let text = write_checkpoint(&ck);
        let back = parse_checkpoint("c", &text).unwrap();
        assert_eq!(back, ck);
        assert_eq!(write_checkpoint(&back), text);
    }

    #[test]
    fn shape_errors_name_the_tensor() {
        let ck = Checkpoint {
            graph: GraphConfig::default(),
            model: ModelConfig::default(),
            params: ModelParams::zeros(&ModelConfig::default()),
        };
        let text = write_checkpoint(&ck).replace("model.d_h=16", "model.d_h=15");
        let e = parse_checkpoint("c", &text).unwrap_err().to_string();
        assert!(e.contains("input_visible.weight"), "{e}");
        assert!(parse_checkpoint("c", "garbage\n").is_err());
    }
}
