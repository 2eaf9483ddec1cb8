//! Edge-list text format:
//!
//! ```text
//! # comment
//! n 4
//! 0 1
//! 1 2
//! blocks: 0 0 1 1
//! ```

use std::fmt::Write as _;

use super::Graph;
use crate::error::{parse_err, Error, Result};

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "n {}", g.n()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    if let Some(blocks) = g.blocks() {
        let labels: Vec<String> = blocks.iter().map(usize::to_string).collect();
        writeln!(out, "blocks: {}", labels.join(" ")).unwrap();
    }
    out
}

pub fn read_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (line_no, header) = lines.next().ok_or_else(|| parse_err(0, "missing \"n <count>\" header"))?;
    let n = match header.split_whitespace().collect::<Vec<_>>()[..] {
        ["n", count] => count
            .parse::<usize>()
            .map_err(|e| parse_err(line_no, format!("bad vertex count: {e}")))?,
        _ => return Err(parse_err(line_no, "expected \"n <count>\"")),
    };

    let mut g = Graph::empty(n);
    let mut blocks = None;
    for (line_no, line) in lines {
        if blocks.is_some() {
            return Err(parse_err(line_no, "content after blocks line"));
        }
        if let Some(rest) = line.strip_prefix("blocks:") {
            let labels = rest
                .split_whitespace()
                .map(|t| t.parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| parse_err(line_no, format!("bad block label: {e}")))?;
            blocks = Some(labels);
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [a, b] = fields[..] else {
            return Err(parse_err(line_no, "expected \"u v\""));
        };
        let parse = |t: &str| t.parse::<usize>().map_err(|e| parse_err(line_no, format!("bad vertex: {e}")));
        let (u, v) = (parse(a)?, parse(b)?);
        g.add_edge(u, v).map_err(|e| match e {
            Error::VertexOutOfRange { .. } | Error::SelfLoop(_) => parse_err(line_no, e.to_string()),
            other => other,
        })?;
    }
    match blocks {
        Some(b) => g.with_blocks(b),
        None => Ok(g),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_gnp, gen_planted_partition};

    #[test]
    fn parses_comments_and_blocks() {
        let g = read_edge_list("# a path\nn 3\n0 1 # first\n\n2 1\nblocks: 0 0 1\n").unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
        assert_eq!(g.blocks(), Some(&[0, 0, 1][..]));
    }

    #[test]
    fn rejects_malformed() {
        assert!(read_edge_list("").is_err());
        assert!(read_edge_list("3\n0 1\n").is_err());
        assert!(read_edge_list("n 3\n0 3\n").is_err());
        assert!(read_edge_list("n 3\n1 1\n").is_err());
        assert!(read_edge_list("n 3\n0 1 2\n").is_err());
        assert!(read_edge_list("n 3\nblocks: 0 1\n").is_err());
    }

    #[test]
    fn round_trip() {
        let g = gen_gnp(25, 0.3, 5).unwrap();
        assert_eq!(read_edge_list(&write_edge_list(&g)).unwrap(), g);
        let p = gen_planted_partition(&[4, 5], 0.8, 0.1, 2).unwrap();
        assert_eq!(read_edge_list(&write_edge_list(&p)).unwrap(), p);
    }
}
