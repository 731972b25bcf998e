//! Fan-in-2 boolean circuits over ROM bits.
//!
//! Text form is parenthesized prefix notation:
//! `(and (or x1 x2) (not x3))`. Inputs are written `x<i>` or `u<i>`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub type NodeId = usize;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Node {
    /// ROM bit `u_i`, 1-based.
    Input(usize),
    Not(NodeId),
    And(NodeId, NodeId),
    Or(NodeId, NodeId),
}

/// A DAG of gates; children always precede their parents.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BooleanCircuit {
    nodes: Vec<Node>,
    output: NodeId,
}

#[derive(Default)]
pub struct CircuitBuilder {
    nodes: Vec<Node>,
}

impl CircuitBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    fn push(&mut self, node: Node) -> NodeId {
        self.nodes.push(node);
        self.nodes.len() - 1
    }

    pub fn input(&mut self, i: usize) -> NodeId {
        self.push(Node::Input(i))
    }

    pub fn not(&mut self, a: NodeId) -> NodeId {
        self.push(Node::Not(a))
    }

    pub fn and(&mut self, a: NodeId, b: NodeId) -> NodeId {
        self.push(Node::And(a, b))
    }

    pub fn or(&mut self, a: NodeId, b: NodeId) -> NodeId {
        self.push(Node::Or(a, b))
    }

    pub fn finish(self, output: NodeId) -> Result<BooleanCircuit> {
        BooleanCircuit::new(self.nodes, output)
    }
}

impl BooleanCircuit {
    pub fn new(nodes: Vec<Node>, output: NodeId) -> Result<Self> {
        if output >= nodes.len() {
            return Err(Error::InvalidSpace(format!("output node {output} does not exist")));
        }
        for (id, node) in nodes.iter().enumerate() {
            let ok = match *node {
                Node::Input(i) => i >= 1 && i <= 63,
                Node::Not(a) => a < id,
                Node::And(a, b) | Node::Or(a, b) => a < id && b < id,
            };
            if !ok {
                return Err(Error::InvalidSpace(format!("node {id} ({node:?}) is malformed")));
            }
        }
        Ok(BooleanCircuit { nodes, output })
    }

    /// `u_{vars[0]} ∧ ... ∧ u_{vars[m-1]}` as a balanced tree of depth
    /// `ceil(log2 m)`.
    pub fn balanced_and(vars: &[usize]) -> Result<Self> {
        if vars.is_empty() {
            return Err(Error::InvalidControls("a conjunction needs at least one input".into()));
        }
        let mut b = CircuitBuilder::new();
        let mut layer: Vec<NodeId> = vars.iter().map(|&i| b.input(i)).collect();
        while layer.len() > 1 {
            layer = layer
                .chunks(2)
                .map(|pair| match *pair {
                    [x, y] => b.and(x, y),
                    [x] => x,
                    _ => unreachable!(),
                })
                .collect();
        }
        b.finish(layer[0])
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn output(&self) -> NodeId {
        self.output
    }

    pub fn node(&self, id: NodeId) -> Node {
        self.nodes[id]
    }

    /// Longest input-to-output path counting AND/OR gates.
    pub fn depth(&self) -> usize {
        let mut depth = vec![0usize; self.nodes.len()];
        for (id, node) in self.nodes.iter().enumerate() {
            depth[id] = match *node {
                Node::Input(_) => 0,
                Node::Not(a) => depth[a],
                Node::And(a, b) | Node::Or(a, b) => 1 + depth[a].max(depth[b]),
            };
        }
        depth[self.output]
    }

    /// Largest ROM index read.
    pub fn max_input(&self) -> usize {
        self.nodes
            .iter()
            .filter_map(|n| match n {
                Node::Input(i) => Some(*i),
                _ => None,
            })
            .max()
            .unwrap_or(0)
    }

    pub fn evaluate(&self, u: u64) -> bool {
        let mut value = vec![false; self.nodes.len()];
        for (id, node) in self.nodes.iter().enumerate() {
            value[id] = match *node {
                Node::Input(i) => u >> (i - 1) & 1 == 1,
                Node::Not(a) => !value[a],
                Node::And(a, b) => value[a] && value[b],
                Node::Or(a, b) => value[a] || value[b],
            };
        }
        value[self.output]
    }

    fn write_node(&self, id: NodeId, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.nodes[id] {
            Node::Input(i) => write!(f, "x{i}"),
            Node::Not(a) => {
                f.write_str("(not ")?;
                self.write_node(a, f)?;
                f.write_str(")")
            }
            Node::And(a, b) | Node::Or(a, b) => {
                let op = if matches!(self.nodes[id], Node::And(..)) { "and" } else { "or" };
                write!(f, "({op} ")?;
                self.write_node(a, f)?;
                f.write_str(" ")?;
                self.write_node(b, f)?;
                f.write_str(")")
            }
        }
    }
}

impl fmt::Display for BooleanCircuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_node(self.output, f)
    }
}

#[derive(Debug, PartialEq)]
enum Token<'a> {
    Open,
    Close,
    Atom(&'a str),
}

fn tokenize(s: &str) -> Vec<(usize, Token<'_>)> {
    let mut out = Vec::new();
    let mut chars = s.char_indices().peekable();
    while let Some(&(pos, ch)) = chars.peek() {
        match ch {
            '(' => {
                out.push((pos, Token::Open));
                chars.next();
            }
            ')' => {
                out.push((pos, Token::Close));
                chars.next();
            }
            c if c.is_whitespace() => {
                chars.next();
            }
            _ => {
                let start = pos;
                let mut end = s.len();
                while let Some(&(p, c)) = chars.peek() {
                    if c == '(' || c == ')' || c.is_whitespace() {
                        end = p;
                        break;
                    }
                    chars.next();
                }
                out.push((start, Token::Atom(&s[start..end])));
            }
        }
    }
    out
}

struct Parser<'a> {
    tokens: Vec<(usize, Token<'a>)>,
    pos: usize,
    end: usize,
    builder: CircuitBuilder,
}

impl<'a> Parser<'a> {
    fn here(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn next(&mut self) -> Option<&Token<'a>> {
        let t = self.tokens.get(self.pos).map(|t| &t.1);
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<NodeId> {
        let at = self.here();
        match self.next() {
            Some(Token::Atom(atom)) => {
                let atom = *atom;
                let index = atom
                    .strip_prefix('x')
                    .or_else(|| atom.strip_prefix('u'))
                    .and_then(|d| d.parse::<usize>().ok())
                    .filter(|&i| (1..=63).contains(&i))
                    .ok_or_else(|| Error::parse(at, format!("expected an input like x1, found {atom:?}")))?;
                Ok(self.builder.input(index))
            }
            Some(Token::Open) => {
                let op_at = self.here();
                let op = match self.next() {
                    Some(Token::Atom(op)) => op.to_ascii_lowercase(),
                    _ => return Err(Error::parse(op_at, "expected and, or or not")),
                };
                let node = match op.as_str() {
                    "not" => {
                        let a = self.expr()?;
                        self.builder.not(a)
                    }
                    "and" | "or" => {
                        let a = self.expr()?;
                        let b = self.expr()?;
                        if op == "and" {
                            self.builder.and(a, b)
                        } else {
                            self.builder.or(a, b)
                        }
                    }
                    other => return Err(Error::parse(op_at, format!("unknown operator {other:?}"))),
                };
                let close_at = self.here();
                match self.next() {
                    Some(Token::Close) => Ok(node),
                    _ => Err(Error::parse(close_at, "expected ')'")),
                }
            }
            Some(Token::Close) => Err(Error::parse(at, "unexpected ')'")),
            None => Err(Error::parse(at, "unexpected end of input")),
        }
    }
}

impl FromStr for BooleanCircuit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parser = Parser {
            tokens: tokenize(s),
            pos: 0,
            end: s.len(),
            builder: CircuitBuilder::new(),
        };
        let out = parser.expr()?;
        if parser.pos < parser.tokens.len() {
            return Err(Error::parse(parser.here(), "trailing input"));
        }
        parser.builder.finish(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn balanced_tree_depths() {
        assert_eq!(BooleanCircuit::balanced_and(&[1]).unwrap().depth(), 0);
        assert_eq!(BooleanCircuit::balanced_and(&[1, 2]).unwrap().depth(), 1);
        assert_eq!(BooleanCircuit::balanced_and(&[1, 2, 3]).unwrap().depth(), 2);
        let c = BooleanCircuit::balanced_and(&(1..=8).collect::<Vec<_>>()).unwrap();
        assert_eq!(c.depth(), 3);
        for u in 0..256u64 {
            assert_eq!(c.evaluate(u), u == 255);
        }
        assert!(BooleanCircuit::balanced_and(&[]).is_err());
    }

    #[test]
    fn parse_and_print() {
        let text = "(and (and x1 x2) (and x3 x4))";
        let c: BooleanCircuit = text.parse().unwrap();
        assert_eq!(c.to_string(), text);
        assert_eq!(c.depth(), 2);
        assert_eq!(c.max_input(), 4);
        let c: BooleanCircuit = "(or (not u1) x2)".parse().unwrap();
        assert_eq!(c.depth(), 1);
        for u in 0..4u64 {
            assert_eq!(c.evaluate(u), u & 1 == 0 || u & 2 == 2);
        }
        let single: BooleanCircuit = "x3".parse().unwrap();
        assert_eq!(single.nodes(), &[Node::Input(3)]);
    }

    #[test]
    fn parse_errors_carry_positions() {
        let err = |s: &str| match s.parse::<BooleanCircuit>() {
            Err(Error::Parse { position, .. }) => position,
            other => panic!("expected parse error, got {other:?}"),
        };
        assert_eq!(err("(and x1"), 7);
        assert_eq!(err("(xor x1 x2)"), 1);
        assert_eq!(err("(and x1 y2)"), 8);
        assert_eq!(err("x1 x2"), 3);
        assert_eq!(err(")"), 0);
    }

    #[test]
    fn rejects_forward_references() {
        assert!(BooleanCircuit::new(vec![Node::Not(1), Node::Input(1)], 0).is_err());
        assert!(BooleanCircuit::new(vec![Node::Input(0)], 0).is_err());
    }
}
