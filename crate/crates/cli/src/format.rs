//! Line-oriented text formats: complex files, oracle dumps, and pairing
//! files. Plain text keeps reconstruction outputs diffable; parse errors
//! cite line numbers.

use std::collections::BTreeMap;

use cubecross::median::MedianGraph;
use cubecross::rigidity::CrossRatioOracle;
use cubecross::roller::{ComplexDescription, Coord, Count};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("{0}")]
    Structure(String),
    #[error(transparent)]
    Load(#[from] cubecross::roller::RollerError),
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

/// Ids appearing in files must stay clear of the coordinate syntax.
fn check_id(line: usize, id: &str) -> Result<(), ParseError> {
    if id.is_empty() {
        return Err(syntax(line, "empty id"));
    }
    if id
        .chars()
        .any(|c| c.is_whitespace() || matches!(c, ':' | ',' | '(' | ')' | '='))
    {
        return Err(syntax(
            line,
            format!("id {id:?} contains whitespace or a reserved character"),
        ));
    }
    Ok(())
}

struct RawFactor {
    vertices: Vec<String>,
    edges: Vec<(String, String)>,
    rays: Vec<(String, String)>,
}

/// Parses a complex file into a loaded description.
///
/// Layout: a `complex <name>` header, a `factors <k>` count, `k` sections
/// each opened by a `factor` line and holding `vertex`, `edge` and
/// `ray <id> at <vertex>` lines, then optional
/// `point <name> = (<coord>,...)` aliases. `#` starts a comment.
pub fn parse_complex(text: &str) -> Result<ComplexDescription, ParseError> {
    let mut name: Option<String> = None;
    let mut declared_factors: Option<usize> = None;
    let mut factors: Vec<RawFactor> = Vec::new();
    let mut points: Vec<(usize, String, String)> = Vec::new();
    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw_line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut words = line.split_whitespace();
        let keyword = words.next().expect("nonempty line");
        match keyword {
            "complex" => {
                let id = words
                    .next()
                    .ok_or_else(|| syntax(line_no, "expected: complex <name>"))?;
                if name.replace(id.to_string()).is_some() {
                    return Err(syntax(line_no, "duplicate complex header"));
                }
            }
            "factors" => {
                let count: usize = words
                    .next()
                    .and_then(|w| w.parse().ok())
                    .ok_or_else(|| syntax(line_no, "expected: factors <count>"))?;
                if count == 0 {
                    return Err(syntax(line_no, "a complex needs at least one factor"));
                }
                if declared_factors.replace(count).is_some() {
                    return Err(syntax(line_no, "duplicate factors line"));
                }
            }
            "factor" => {
                factors.push(RawFactor {
                    vertices: Vec::new(),
                    edges: Vec::new(),
                    rays: Vec::new(),
                });
            }
            "vertex" => {
                let id = words
                    .next()
                    .ok_or_else(|| syntax(line_no, "expected: vertex <id>"))?;
                check_id(line_no, id)?;
                factors
                    .last_mut()
                    .ok_or_else(|| syntax(line_no, "vertex before any factor line"))?
                    .vertices
                    .push(id.to_string());
            }
            "edge" => {
                let a = words
                    .next()
                    .ok_or_else(|| syntax(line_no, "expected: edge <a> <b>"))?;
                let b = words
                    .next()
                    .ok_or_else(|| syntax(line_no, "expected: edge <a> <b>"))?;
                check_id(line_no, a)?;
                check_id(line_no, b)?;
                factors
                    .last_mut()
                    .ok_or_else(|| syntax(line_no, "edge before any factor line"))?
                    .edges
                    .push((a.to_string(), b.to_string()));
            }
            "ray" => {
                let id = words
                    .next()
                    .ok_or_else(|| syntax(line_no, "expected: ray <id> at <vertex>"))?;
                let at = words.next();
                let base = words.next();
                if at != Some("at") || base.is_none() {
                    return Err(syntax(line_no, "expected: ray <id> at <vertex>"));
                }
                let base = base.expect("checked above");
                check_id(line_no, id)?;
                check_id(line_no, base)?;
                factors
                    .last_mut()
                    .ok_or_else(|| syntax(line_no, "ray before any factor line"))?
                    .rays
                    .push((id.to_string(), base.to_string()));
            }
            "point" => {
                let rest = line.strip_prefix("point").expect("matched keyword").trim();
                let (alias, coords) = rest
                    .split_once('=')
                    .ok_or_else(|| syntax(line_no, "expected: point <name> = (<coords>)"))?;
                let alias = alias.trim();
                check_id(line_no, alias)?;
                points.push((line_no, alias.to_string(), coords.trim().to_string()));
            }
            other => {
                return Err(syntax(line_no, format!("unknown keyword {other:?}")));
            }
        }
        if words.next().is_some() && keyword != "point" {
            return Err(syntax(line_no, "trailing tokens"));
        }
    }
    let name = name.ok_or_else(|| syntax(1, "missing complex header"))?;
    let declared = declared_factors.ok_or_else(|| syntax(1, "missing factors line"))?;
    if factors.len() != declared {
        return Err(ParseError::Structure(format!(
            "declared {declared} factors but found {}",
            factors.len()
        )));
    }
    let mut raw_factors = Vec::new();
    for (i, f) in factors.into_iter().enumerate() {
        let core = MedianGraph::new(f.vertices, f.edges)
            .map_err(|e| ParseError::Structure(format!("factor {i}: {e}")))?;
        raw_factors.push((core, f.rays));
    }
    let mut named: BTreeMap<String, Vec<Coord>> = BTreeMap::new();
    for (line_no, alias, coord_text) in points {
        let inner = coord_text
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .unwrap_or(&coord_text);
        let coords = inner
            .split(',')
            .map(|c| Coord::parse(c.trim()))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| syntax(line_no, e.to_string()))?;
        if named.insert(alias.clone(), coords).is_some() {
            return Err(syntax(line_no, format!("duplicate point alias {alias:?}")));
        }
    }
    Ok(ComplexDescription::load(name, raw_factors, named)?)
}

/// Writes a complex in the file format, deterministically.
pub fn write_complex(complex: &ComplexDescription) -> String {
    let mut out = String::new();
    out.push_str(&format!("complex {}\n", complex.name()));
    out.push_str(&format!("factors {}\n", complex.factors().len()));
    for factor in complex.factors() {
        out.push_str("factor\n");
        for v in factor.core().ids() {
            out.push_str(&format!("vertex {v}\n"));
        }
        for &(u, v) in factor.core().edges() {
            out.push_str(&format!(
                "edge {} {}\n",
                factor.core().id_of(u),
                factor.core().id_of(v)
            ));
        }
        for ray in factor.rays() {
            out.push_str(&format!("ray {} at {}\n", ray.id, ray.base));
        }
    }
    for (alias, point) in complex.named_points() {
        out.push_str(&format!("point {alias} = {}\n", point.render()));
    }
    out
}



fn parse_count(line: usize, text: &str) -> Result<Count, ParseError> {
    if text == "inf" {
        Ok(Count::Infinite)
    } else {
        text.parse::<u64>()
            .map(Count::Finite)
            .map_err(|_| syntax(line, format!("bad count {text:?}")))
    }
}

/// Parses an oracle dump: header, completeness flag, point list, and one
/// record per 4-multiset.
pub fn parse_oracle(text: &str) -> Result<(String, CrossRatioOracle), ParseError> {
    let mut name: Option<String> = None;
    let mut complete: Option<bool> = None;
    let mut ids: Vec<String> = Vec::new();
    let mut declared_points: Option<usize> = None;
    let mut rows: Vec<([String; 4], bool, [Count; 3])> = Vec::new();
    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw_line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut words = line.split_whitespace();
        match words.next().expect("nonempty line") {
            "oracle" => {
                let id = words
                    .next()
                    .ok_or_else(|| syntax(line_no, "expected: oracle <name>"))?;
                name = Some(id.to_string());
            }
            "status" => match words.next() {
                Some("complete") => complete = Some(true),
                Some("partial") => complete = Some(false),
                _ => return Err(syntax(line_no, "expected: status complete|partial")),
            },
            "points" => {
                let count: usize = words
                    .next()
                    .and_then(|w| w.parse().ok())
                    .ok_or_else(|| syntax(line_no, "expected: points <count>"))?;
                declared_points = Some(count);
            }
            "point" => {
                let id = words
                    .next()
                    .ok_or_else(|| syntax(line_no, "expected: point <id>"))?;
                check_id(line_no, id)?;
                ids.push(id.to_string());
            }
            "record" => {
                let mut take_id = || -> Result<String, ParseError> {
                    let id = words
                        .next()
                        .ok_or_else(|| syntax(line_no, "record needs four ids"))?;
                    Ok(id.to_string())
                };
                let key = [take_id()?, take_id()?, take_id()?, take_id()?];
                let adm = words
                    .next()
                    .and_then(|w| w.strip_prefix("adm="))
                    .ok_or_else(|| syntax(line_no, "expected adm=0|1"))?;
                let admissible = match adm {
                    "0" => false,
                    "1" => true,
                    _ => return Err(syntax(line_no, "expected adm=0|1")),
                };
                let crt = words
                    .next()
                    .and_then(|w| w.strip_prefix("crt="))
                    .ok_or_else(|| syntax(line_no, "expected crt=<a>:<b>:<c>"))?;
                let parts: Vec<&str> = crt.split(':').collect();
                if parts.len() != 3 {
                    return Err(syntax(line_no, "expected crt=<a>:<b>:<c>"));
                }
                let entries = [
                    parse_count(line_no, parts[0])?,
                    parse_count(line_no, parts[1])?,
                    parse_count(line_no, parts[2])?,
                ];
                rows.push((key, admissible, entries));
            }
            other => return Err(syntax(line_no, format!("unknown keyword {other:?}"))),
        }
    }
    let name = name.ok_or_else(|| syntax(1, "missing oracle header"))?;
    let complete = complete.ok_or_else(|| syntax(1, "missing status line"))?;
    if let Some(declared) = declared_points {
        if declared != ids.len() {
            return Err(ParseError::Structure(format!(
                "declared {declared} points but listed {}",
                ids.len()
            )));
        }
    }
    let oracle = CrossRatioOracle::from_records(ids, complete, rows)
        .map_err(|e| ParseError::Structure(e.to_string()))?;
    Ok((name, oracle))
}

/// Writes an oracle dump, deterministically.
pub fn write_oracle(name: &str, oracle: &CrossRatioOracle) -> String {
    let mut out = String::new();
    out.push_str(&format!("oracle {name}\n"));
    out.push_str(&format!(
        "status {}\n",
        if oracle.is_complete() {
            "complete"
        } else {
            "partial"
        }
    ));
    out.push_str(&format!("points {}\n", oracle.ids().len()));
    for id in oracle.ids() {
        out.push_str(&format!("point {id}\n"));
    }
    for (key, record) in oracle.records() {
        let entries = record.crt.entries();
        out.push_str(&format!(
            "record {} {} {} {} adm={} crt={}:{}:{}\n",
            key[0],
            key[1],
            key[2],
            key[3],
            record.admissible as u8,
            entries[0],
            entries[1],
            entries[2]
        ));
    }
    out
}

/// Parses a pairing file: `pair <source-id> <target-id>` lines.
pub fn parse_pairing(text: &str) -> Result<BTreeMap<String, String>, ParseError> {
    let mut map = BTreeMap::new();
    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw_line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut words = line.split_whitespace();
        if words.next() != Some("pair") {
            return Err(syntax(line_no, "expected: pair <source> <target>"));
        }
        let a = words
            .next()
            .ok_or_else(|| syntax(line_no, "expected: pair <source> <target>"))?;
        let b = words
            .next()
            .ok_or_else(|| syntax(line_no, "expected: pair <source> <target>"))?;
        check_id(line_no, a)?;
        check_id(line_no, b)?;
        if words.next().is_some() {
            return Err(syntax(line_no, "trailing tokens"));
        }
        if map.insert(a.to_string(), b.to_string()).is_some() {
            return Err(syntax(line_no, format!("duplicate pairing for {a:?}")));
        }
    }
    Ok(map)
}
