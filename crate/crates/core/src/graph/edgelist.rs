use crate::error::{Error, Result};
use crate::graph::FiniteGraph;

/// Parses the whitespace-separated edge-list format.
///
/// One edge per line as two 1-based indices. Blank lines and lines starting
/// with `#` are skipped. An optional `n=<count>` line before the first edge
/// fixes the vertex count; otherwise it is the largest index seen.
pub fn parse_edge_list(text: &str) -> Result<FiniteGraph> {
    let mut declared: Option<usize> = None;
    let mut edges = Vec::new();
    let mut max_index = 0u64;
    for (no, raw) in text.lines().enumerate() {
        let line_no = no + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| Error::Parse {
            line: line_no,
            message,
        };
        if let Some(count) = line.strip_prefix("n=") {
            if !edges.is_empty() || declared.is_some() {
                return Err(err("header n=<count> must precede all edges".into()));
            }
            declared = Some(
                count
                    .trim()
                    .parse()
                    .map_err(|_| err(format!("bad vertex count {count:?}")))?,
            );
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [a, b] = fields.as_slice() else {
            return Err(err(format!("expected two vertex indices, got {line:?}")));
        };
        let parse = |t: &str| -> Result<u64> {
            match t.parse::<u64>() {
                Ok(0) => Err(err("vertex indices are 1-based".into())),
                Ok(i) => Ok(i),
                Err(_) => Err(err(format!("bad vertex index {t:?}"))),
            }
        };
        let (a, b) = (parse(a)?, parse(b)?);
        if a == b {
            return Err(err(format!("loop at vertex {a}")));
        }
        if let Some(n) = declared {
            if a.max(b) > n as u64 {
                return Err(err(format!("vertex {} exceeds declared count {n}", a.max(b))));
            }
        }
        max_index = max_index.max(a).max(b);
        edges.push((a, b));
    }
    let n = declared.unwrap_or(max_index as usize);
    if n == 0 {
        return Err(Error::Parse {
            line: 0,
            message: "edge list contains no vertices".into(),
        });
    }
    FiniteGraph::from_edges(n, edges)
}
