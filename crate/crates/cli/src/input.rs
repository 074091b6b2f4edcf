use std::io::BufRead;

use dalpha_core::graph::graph6::parse_graph6;
use dalpha_core::graph::EdgeList;
use dalpha_core::{Error, Graph, Result};

/// Lazily reads non-blank lines from several inputs in order, numbering them from 0.
pub struct GraphLines {
    readers: Vec<Box<dyn BufRead>>,
    current: usize,
    index: usize,
}

impl GraphLines {
    pub fn new(readers: Vec<Box<dyn BufRead>>) -> Self {
        GraphLines {
            readers,
            current: 0,
            index: 0,
        }
    }

    pub fn next_chunk(&mut self, size: usize) -> Result<Vec<(usize, String)>> {
        let mut out = Vec::with_capacity(size);
        let mut line = String::new();
        while out.len() < size && self.current < self.readers.len() {
            line.clear();
            if self.readers[self.current].read_line(&mut line)? == 0 {
                self.current += 1;
                continue;
            }
            let text = line.trim();
            if text.is_empty() || text.starts_with(">>graph6<<") && text.len() == 10 {
                continue;
            }
            out.push((self.index, text.to_string()));
            self.index += 1;
        }
        Ok(out)
    }
}

/// A graph6 line, or a JSON edge list `{"n":..,"edges":[[u,v],..]}`.
pub fn parse_line(text: &str) -> Result<Graph> {
    if text.starts_with('{') {
        let list: EdgeList = serde_json::from_str(text)?;
        Graph::from_edge_list_json(&list)
    } else {
        parse_graph6(text)
    }
}

/// `7`, `4..7`, `4..=7`, `4-7` or a comma list of those.
pub fn parse_orders(spec: &str) -> Result<Vec<usize>> {
    let bad = || Error::Config(format!("bad order list {spec:?}"));
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    let mut out = Vec::new();
    for part in spec.split(',') {
        let range = part
            .split_once("..=")
            .or_else(|| part.split_once(".."))
            .or_else(|| part.split_once('-'));
        match range {
            Some((a, b)) => out.extend(num(a)?..=num(b)?),
            None => out.push(num(part)?),
        }
    }
    out.sort_unstable();
    out.dedup();
    if out.is_empty() {
        return Err(bad());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_lists() {
        assert_eq!(parse_orders("7").unwrap(), vec![7]);
        assert_eq!(parse_orders("4..6").unwrap(), vec![4, 5, 6]);
        assert_eq!(parse_orders("4-5,9").unwrap(), vec![4, 5, 9]);
        assert!(parse_orders("x").is_err());
    }

    #[test]
    fn chunks_skip_blank_lines() {
        let a: Box<dyn BufRead> = Box::new("Bw\n\nCF\n".as_bytes());
        let b: Box<dyn BufRead> = Box::new("C~\n".as_bytes());
        let mut lines = GraphLines::new(vec![a, b]);
        let first = lines.next_chunk(2).unwrap();
        assert_eq!(first, vec![(0, "Bw".to_string()), (1, "CF".to_string())]);
        assert_eq!(lines.next_chunk(5).unwrap(), vec![(2, "C~".to_string())]);
        assert!(lines.next_chunk(5).unwrap().is_empty());
    }
}
