//! A tiny arithmetic language for user-defined two-class scores.
//!
//! Expressions are closed formulas over the four outcome probabilities
//! `ptn`, `pfp`, `pfn`, `ptp` with `+ - * / ^`, `sqrt`, `log`, and
//! parentheses. Evaluation is total over the domain it defines itself:
//! division by zero, `log` of a non-positive value, `sqrt` of a negative
//! value, or any non-finite intermediate marks the performance as outside
//! the score's domain.

use std::fmt;

use perfrank::{two_class_space, Score};

/// Parse failure with the byte offset it was detected at.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at byte {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

/// A parsed score expression, reusable across evaluations.
#[derive(Debug, Clone)]
pub struct ScoreExpression {
    source: String,
    root: Node,
}

#[derive(Debug, Clone)]
enum Node {
    Constant(f64),
    Variable(usize),
    Negate(Box<Node>),
    Add(Box<Node>, Box<Node>),
    Subtract(Box<Node>, Box<Node>),
    Multiply(Box<Node>, Box<Node>),
    Divide(Box<Node>, Box<Node>),
    Power(Box<Node>, Box<Node>),
    Sqrt(Box<Node>),
    Log(Box<Node>),
}

impl Node {
    fn eval(&self, probs: &[f64]) -> Option<f64> {
        let value = match self {
            Node::Constant(c) => *c,
            Node::Variable(i) => probs[*i],
            Node::Negate(a) => -a.eval(probs)?,
            Node::Add(a, b) => a.eval(probs)? + b.eval(probs)?,
            Node::Subtract(a, b) => a.eval(probs)? - b.eval(probs)?,
            Node::Multiply(a, b) => a.eval(probs)? * b.eval(probs)?,
            Node::Divide(a, b) => {
                let denominator = b.eval(probs)?;
                if denominator == 0.0 {
                    return None;
                }
                a.eval(probs)? / denominator
            }
            Node::Power(a, b) => a.eval(probs)?.powf(b.eval(probs)?),
            Node::Sqrt(a) => {
                let inner = a.eval(probs)?;
                if inner < 0.0 {
                    return None;
                }
                inner.sqrt()
            }
            Node::Log(a) => {
                let inner = a.eval(probs)?;
                if inner <= 0.0 {
                    return None;
                }
                inner.ln()
            }
        };
        value.is_finite().then_some(value)
    }
}

impl ScoreExpression {
    pub fn parse(text: &str) -> Result<ScoreExpression, ParseError> {
        let mut parser = Parser {
            bytes: text.as_bytes(),
            position: 0,
        };
        parser.skip_whitespace();
        let root = parser.expression()?;
        parser.skip_whitespace();
        if parser.position != parser.bytes.len() {
            return Err(parser.error("unexpected trailing input"));
        }
        Ok(ScoreExpression {
            source: text.to_string(),
            root,
        })
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    /// Wraps the expression as a score on the canonical two-class space.
    pub fn to_score(&self) -> Score {
        let root = self.root.clone();
        Score::from_fn(self.source.clone(), &two_class_space(), move |probs| {
            root.eval(probs)
        })
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    position: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            position: self.position,
            message: message.into(),
        }
    }

    fn skip_whitespace(&mut self) {
        while self
            .bytes
            .get(self.position)
            .is_some_and(u8::is_ascii_whitespace)
        {
            self.position += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.position).copied()
    }

    fn accept(&mut self, byte: u8) -> bool {
        if self.peek() == Some(byte) {
            self.position += 1;
            self.skip_whitespace();
            true
        } else {
            false
        }
    }

    fn expression(&mut self) -> Result<Node, ParseError> {
        let mut node = self.term()?;
        loop {
            if self.accept(b'+') {
                node = Node::Add(Box::new(node), Box::new(self.term()?));
            } else if self.accept(b'-') {
                node = Node::Subtract(Box::new(node), Box::new(self.term()?));
            } else {
                return Ok(node);
            }
        }
    }

    fn term(&mut self) -> Result<Node, ParseError> {
        let mut node = self.unary()?;
        loop {
            if self.accept(b'*') {
                node = Node::Multiply(Box::new(node), Box::new(self.unary()?));
            } else if self.accept(b'/') {
                node = Node::Divide(Box::new(node), Box::new(self.unary()?));
            } else {
                return Ok(node);
            }
        }
    }

    fn unary(&mut self) -> Result<Node, ParseError> {
        if self.accept(b'-') {
            return Ok(Node::Negate(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Node, ParseError> {
        let base = self.atom()?;
        if self.accept(b'^') {
            // Right-associative, and `-x^2` binds the sign to the base.
            let exponent = self.unary()?;
            return Ok(Node::Power(Box::new(base), Box::new(exponent)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Node, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.position += 1;
                self.skip_whitespace();
                let inner = self.expression()?;
                if !self.accept(b')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => self.identifier(),
            Some(c) => Err(self.error(format!("unexpected character `{}`", c as char))),
            None => Err(self.error("unexpected end of expression")),
        }
    }

    fn number(&mut self) -> Result<Node, ParseError> {
        let start = self.position;
        while self
            .peek()
            .is_some_and(|c| c.is_ascii_digit() || c == b'.')
        {
            self.position += 1;
        }
        if matches!(self.peek(), Some(b'e' | b'E')) {
            let mark = self.position;
            self.position += 1;
            if matches!(self.peek(), Some(b'+' | b'-')) {
                self.position += 1;
            }
            if self.peek().is_some_and(|c| c.is_ascii_digit()) {
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.position += 1;
                }
            } else {
                self.position = mark;
            }
        }
        let text = std::str::from_utf8(&self.bytes[start..self.position]).unwrap();
        let value: f64 = text.parse().map_err(|_| ParseError {
            position: start,
            message: format!("invalid number `{text}`"),
        })?;
        self.skip_whitespace();
        Ok(Node::Constant(value))
    }

    fn identifier(&mut self) -> Result<Node, ParseError> {
        let start = self.position;
        while self
            .peek()
            .is_some_and(|c| c.is_ascii_alphanumeric() || c == b'_')
        {
            self.position += 1;
        }
        let name = std::str::from_utf8(&self.bytes[start..self.position]).unwrap();
        self.skip_whitespace();
        match name {
            "ptn" => Ok(Node::Variable(0)),
            "pfp" => Ok(Node::Variable(1)),
            "pfn" => Ok(Node::Variable(2)),
            "ptp" => Ok(Node::Variable(3)),
            "sqrt" | "log" => {
                if !self.accept(b'(') {
                    return Err(self.error(format!("expected `(` after `{name}`")));
                }
                let inner = self.expression()?;
                if !self.accept(b')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(match name {
                    "sqrt" => Node::Sqrt(Box::new(inner)),
                    _ => Node::Log(Box::new(inner)),
                })
            }
            other => Err(ParseError {
                position: start,
                message: format!(
                    "unknown identifier `{other}` (variables: ptn, pfp, pfn, ptp; functions: sqrt, log)"
                ),
            }),
        }
    }
}
