//! Reader for the subset of GML used by the classic network collections:
//! a `graph [ ... ]` block with `node [ id <int> ... ]` and
//! `edge [ source <int> target <int> ... ]` records. Other keys are ignored.

use std::collections::HashMap;
use std::io::Read;

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Open,
    Close,
    Key(String),
    Int(i64),
    Real,
    Str,
}

fn tokenize(text: &str) -> Result<Vec<(Token, usize)>> {
    let mut tokens = Vec::new();
    let mut chars = text.char_indices().peekable();
    let mut line = 1;
    while let Some(&(start, c)) = chars.peek() {
        match c {
            '\n' => {
                line += 1;
                chars.next();
            }
            c if c.is_whitespace() => {
                chars.next();
            }
            '#' => {
                while let Some(&(_, c)) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    chars.next();
                }
            }
            '[' => {
                tokens.push((Token::Open, line));
                chars.next();
            }
            ']' => {
                tokens.push((Token::Close, line));
                chars.next();
            }
            '"' => {
                let opened = line;
                chars.next();
                let mut closed = false;
                for (_, c) in chars.by_ref() {
                    if c == '"' {
                        closed = true;
                        break;
                    }
                    if c == '\n' {
                        line += 1;
                    }
                }
                if !closed {
                    return Err(Error::parse(opened, "unterminated string"));
                }
                tokens.push((Token::Str, opened));
            }
            _ => {
                let mut end = start;
                while let Some(&(i, c)) = chars.peek() {
                    if c.is_whitespace() || c == '[' || c == ']' || c == '"' {
                        break;
                    }
                    end = i + c.len_utf8();
                    chars.next();
                }
                let word = &text[start..end];
                let token = if let Ok(v) = word.parse::<i64>() {
                    Token::Int(v)
                } else if word.parse::<f64>().is_ok() {
                    Token::Real
                } else if word
                    .chars()
                    .next()
                    .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                {
                    Token::Key(word.to_owned())
                } else {
                    return Err(Error::parse(line, format!("unexpected token `{word}`")));
                };
                tokens.push((token, line));
            }
        }
    }
    Ok(tokens)
}

#[derive(Debug)]
enum Value {
    Int(i64),
    Other,
    List(Vec<(String, Value, usize)>),
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    pos: usize,
}

impl Parser {
    fn last_line(&self) -> usize {
        self.tokens.last().map_or(1, |t| t.1)
    }

    /// Parses `key value` pairs until a closing bracket (when `nested`) or end of input.
    fn pairs(&mut self, nested: bool) -> Result<Vec<(String, Value, usize)>> {
        let mut out = Vec::new();
        loop {
            let Some((token, line)) = self.tokens.get(self.pos).cloned() else {
                if nested {
                    return Err(Error::parse(
                        self.last_line(),
                        "unbalanced brackets: missing `]`",
                    ));
                }
                return Ok(out);
            };
            self.pos += 1;
            let key = match token {
                Token::Close if nested => return Ok(out),
                Token::Close => return Err(Error::parse(line, "unbalanced brackets: stray `]`")),
                Token::Key(k) => k,
                _ => return Err(Error::parse(line, "expected a key")),
            };
            let Some((token, vline)) = self.tokens.get(self.pos).cloned() else {
                return Err(Error::parse(line, format!("missing value for `{key}`")));
            };
            self.pos += 1;
            let value = match token {
                Token::Int(v) => Value::Int(v),
                Token::Real | Token::Str => Value::Other,
                Token::Open => Value::List(self.pairs(true)?),
                Token::Close => {
                    return Err(Error::parse(vline, format!("missing value for `{key}`")))
                }
                Token::Key(_) => {
                    return Err(Error::parse(vline, format!("invalid value for `{key}`")))
                }
            };
            out.push((key, value, line));
        }
    }
}

fn int_field(record: &[(String, Value, usize)], name: &str) -> Option<i64> {
    record.iter().find_map(|(k, v, _)| match v {
        Value::Int(i) if k == name => Some(*i),
        _ => None,
    })
}

/// Reads a GML document. Node ids are remapped to dense ids in declaration order
/// and keep their GML id as label; edges are undirected and deduplicated.
pub fn load_gml<R: Read>(mut reader: R) -> Result<Graph> {
    let mut text = String::new();
    reader.read_to_string(&mut text)?;
    let tokens = tokenize(&text)?;
    let mut parser = Parser { tokens, pos: 0 };
    let document = parser.pairs(false)?;

    let graph = document
        .iter()
        .find_map(|(k, v, _)| match v {
            Value::List(items) if k == "graph" => Some(items),
            _ => None,
        })
        .ok_or_else(|| Error::parse(1, "no `graph [ ... ]` block"))?;

    let mut builder = GraphBuilder::new();
    let mut dense: HashMap<i64, usize> = HashMap::new();
    for (key, value, line) in graph {
        if let ("node", Value::List(record)) = (key.as_str(), value) {
            let id = int_field(record, "id")
                .ok_or_else(|| Error::parse(*line, "node without integer id"))?;
            if dense.contains_key(&id) {
                return Err(Error::parse(*line, format!("duplicate node id {id}")));
            }
            dense.insert(id, builder.intern(&id.to_string()));
        }
    }
    for (key, value, line) in graph {
        if let ("edge", Value::List(record)) = (key.as_str(), value) {
            let endpoint = |name: &str| -> Result<usize> {
                let id = int_field(record, name)
                    .ok_or_else(|| Error::parse(*line, format!("edge without integer {name}")))?;
                dense.get(&id).copied().ok_or(Error::UndeclaredNode(id))
            };
            let u = endpoint("source")?;
            let v = endpoint("target")?;
            builder.add_edge(u, v);
        }
    }
    Ok(builder.build())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn load(text: &str) -> Result<Graph> {
        load_gml(text.as_bytes())
    }

    #[test]
    fn minimal_document() {
        let g = load("graph [ node [ id 0 ] node [ id 1 ] edge [ source 0 target 1 ] ]").unwrap();
        assert_eq!(g.node_count(), 2);
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn attributes_and_header_are_ignored() {
        let text = r#"Creator "someone on a [bracketed] day"
        # a comment line
        graph
        [
          directed 1
          node [ id 10 label "x y" value 2.5 graphics [ x 1.0 y -2 ] ]
          node [ id 3 ]
          node [ id 7 ]
          edge [ source 10 target 3 value 4 ]
          edge [ source 3 target 10 ]
          edge [ source 7 target 7 ]
        ]"#;
        let g = load(text).unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.labels(), &["10".to_string(), "3".into(), "7".into()]);
    }

    #[test]
    fn undeclared_node_is_an_error() {
        let err = load("graph [ node [ id 0 ] edge [ source 0 target 5 ] ]").unwrap_err();
        assert!(matches!(err, Error::UndeclaredNode(5)));
    }

    #[test]
    fn unbalanced_brackets_are_parse_errors() {
        assert!(matches!(
            load("graph [ node [ id 0 ]"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            load("graph [ node [ id 0 ] ] ]"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn missing_graph_block() {
        assert!(matches!(load("Creator \"x\""), Err(Error::Parse { .. })));
    }

    #[test]
    fn duplicate_node_ids_rejected() {
        assert!(matches!(
            load("graph [ node [ id 1 ] node [ id 1 ] ]"),
            Err(Error::Parse { .. })
        ));
    }
}
