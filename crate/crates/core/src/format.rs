//! Text and JSON encodings of complexes, and pair specifications.
//!
//! Text format, one directive per line, `#` starts a comment:
//!
//! ```text
//! m 4
//! face 1 2
//! face 2 3
//! ```

use std::collections::HashSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::catalog;
use crate::complex::{IndexSubset, SimplicialComplex};
use crate::error::{Error, Result};
use crate::pair::{pair_cone, pair_disk_sphere, pair_space_basepoint, CellModel, PairModel};

fn check_face(face: &[usize], m: usize, line: Option<usize>, seen: &mut HashSet<u32>) -> Result<()> {
    let mut mask = 0u32;
    for &v in face {
        if v == 0 || v > m {
            return Err(Error::parse(line, format!("vertex {v} out of range 1..={m}")));
        }
        if mask >> (v - 1) & 1 == 1 {
            return Err(Error::parse(line, format!("vertex {v} repeated in face")));
        }
        mask |= 1 << (v - 1);
    }
    if !seen.insert(mask) {
        return Err(Error::parse(
            line,
            format!("duplicate face {}", IndexSubset::from_mask(mask)),
        ));
    }
    Ok(())
}

/// Parses the `m` / `face` text format.
pub fn parse_complex_text(text: &str) -> Result<SimplicialComplex> {
    let mut m: Option<usize> = None;
    let mut faces: Vec<Vec<usize>> = Vec::new();
    let mut seen = HashSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = Some(idx + 1);
        let content = raw.split('#').next().unwrap_or("").trim();
        let mut tokens = content.split_whitespace();
        let Some(directive) = tokens.next() else { continue };
        let numbers = tokens
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::parse(line, format!("expected a nonnegative integer, found {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        match directive {
            "m" => {
                if m.is_some() {
                    return Err(Error::parse(line, "duplicate m directive"));
                }
                match numbers.as_slice() {
                    [0] => return Err(Error::parse(line, "m must be positive")),
                    [v] => m = Some(*v),
                    _ => return Err(Error::parse(line, "m takes exactly one integer")),
                }
            }
            "face" => {
                let Some(mm) = m else {
                    return Err(Error::parse(line, "face before the m directive"));
                };
                check_face(&numbers, mm, line, &mut seen)?;
                faces.push(numbers);
            }
            other => return Err(Error::parse(line, format!("unknown directive {other:?}"))),
        }
    }
    let m = m.ok_or_else(|| Error::parse(None, "missing m directive"))?;
    SimplicialComplex::from_maximal_faces(m, &faces)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexJson {
    m: usize,
    maximal_faces: Vec<Vec<usize>>,
}

/// Parses `{"m": int, "maximal_faces": [[int, ...], ...]}`.
pub fn parse_complex_json(text: &str) -> Result<SimplicialComplex> {
    let raw: ComplexJson = serde_json::from_str(text).map_err(|e| Error::parse(Some(e.line()), e.to_string()))?;
    if raw.m == 0 {
        return Err(Error::parse(None, "m must be positive"));
    }
    let mut seen = HashSet::new();
    for face in &raw.maximal_faces {
        check_face(face, raw.m, None, &mut seen)?;
    }
    SimplicialComplex::from_maximal_faces(raw.m, &raw.maximal_faces)
}

/// JSON when the first non-blank character is `{`, text otherwise.
pub fn parse_complex(text: &str) -> Result<SimplicialComplex> {
    if text.trim_start().starts_with('{') {
        parse_complex_json(text)
    } else {
        parse_complex_text(text)
    }
}

/// Reads a complex from a file, or a catalog entry written `@name` (e.g. `@square`, `@boundary:4`).
pub fn load_complex(source: &str) -> Result<SimplicialComplex> {
    if let Some(name) = source.strip_prefix('@') {
        return catalog::named(name).ok_or_else(|| Error::parse(None, format!("unknown catalog complex {name:?}")));
    }
    let text = std::fs::read_to_string(Path::new(source)).map_err(|e| Error::Parse {
        location: Some(source.to_string()),
        message: e.to_string(),
    })?;
    parse_complex(&text).map_err(|e| e.in_file(source))
}

pub fn complex_to_text(k: &SimplicialComplex) -> String {
    let mut out = format!("m {}\n", k.m());
    for f in k.maximal_faces().iter().filter(|f| !f.is_empty()) {
        let vs: Vec<String> = f.vertices().map(|v| v.to_string()).collect();
        out.push_str(&format!("face {}\n", vs.join(" ")));
    }
    out
}

pub fn complex_to_json(k: &SimplicialComplex) -> String {
    let raw = ComplexJson {
        m: k.m(),
        maximal_faces: k
            .maximal_faces()
            .iter()
            .filter(|f| !f.is_empty())
            .map(|f| f.to_vec())
            .collect(),
    };
    serde_json::to_string(&raw).expect("plain data")
}

fn parse_number(s: &str, what: &str) -> Result<usize> {
    s.parse::<usize>()
        .map_err(|_| Error::parse(None, format!("{what} must be a nonnegative integer, found {s:?}")))
}

/// Pair models by name:
///
/// * `disk-sphere:n`: `(D^(n+1), S^n)`
/// * `cone:<complex>:<vertex>`, `based:<complex>:<vertex>`: from a complex file or `@name`
/// * `cone-sphere:n`, `based-sphere:n`, `cone-rp2`, `based-rp2`: minimal CW models
pub fn parse_pair_spec(spec: &str) -> Result<PairModel> {
    let (kind, rest) = spec.split_once(':').unwrap_or((spec, ""));
    match kind {
        "disk-sphere" => Ok(pair_disk_sphere(parse_number(rest, "sphere dimension")?)),
        "cone-sphere" => Ok(PairModel::cone(&CellModel::sphere(parse_number(
            rest,
            "sphere dimension",
        )?))),
        "based-sphere" => Ok(PairModel::based(&CellModel::sphere(parse_number(
            rest,
            "sphere dimension",
        )?))),
        "cone-rp2" if rest.is_empty() => Ok(PairModel::cone(&CellModel::rp2())),
        "based-rp2" if rest.is_empty() => Ok(PairModel::based(&CellModel::rp2())),
        "cone" | "based" => {
            let (source, vertex) = rest
                .rsplit_once(':')
                .ok_or_else(|| Error::parse(None, format!("expected {kind}:<complex>:<vertex>, found {spec:?}")))?;
            let k = load_complex(source)?;
            let v = parse_number(vertex, "basepoint vertex")?;
            if kind == "cone" {
                pair_cone(&k, v)
            } else {
                pair_space_basepoint(&k, v)
            }
        }
        _ => Err(Error::parse(None, format!("unknown pair specification {spec:?}"))),
    }
}
