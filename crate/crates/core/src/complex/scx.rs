//! The SCX text format: one maximal simplex per line, `#` comments.

use thiserror::Error;

use super::{SimplicialComplex, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ScxError {
    pub line: usize,
    pub message: String,
}

pub fn parse_scx(text: &str) -> Result<SimplicialComplex, ScxError> {
    let mut maximal: Vec<Vec<Vertex>> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let ids = line
            .split_whitespace()
            .map(|tok| tok.parse::<Vertex>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| ScxError { line: i + 1, message: format!("bad vertex id in {line:?}: {e}") })?;
        maximal.push(ids);
    }
    SimplicialComplex::close_downward(maximal).map_err(|e| ScxError { line: 0, message: e.to_string() })
}

/// Maximal simplices in lexicographic order, one per line.
pub fn write_scx(k: &SimplicialComplex) -> String {
    let mut out = String::new();
    for s in k.maximal_simplices() {
        let line: Vec<String> = s.vertices().iter().map(Vertex::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}
