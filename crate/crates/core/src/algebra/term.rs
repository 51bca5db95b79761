//! Terms in parenthesized prefix notation, e.g. `(mul (mul x (inv y)) z)`.
//!
//! Bare atoms are variables; an operation application is always wrapped in
//! parentheses, including constants: `(one)`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use super::{Algebra, Signature};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Self {
        Term::Var(name.into())
    }

    pub fn app(op: impl Into<String>, args: Vec<Term>) -> Self {
        Term::App(op.into(), args)
    }

    pub fn vars(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            Term::Var(v) => {
                out.insert(v);
            }
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    /// Resolves operation names against `sig` and variables against `vars`
    /// (variable `vars[i]` reads slot `i` of the environment).
    pub fn compile(&self, sig: &Signature, vars: &[&str]) -> Result<CompiledTerm> {
        let mut nodes = Vec::new();
        self.compile_into(sig, vars, &mut nodes)?;
        Ok(CompiledTerm { nodes })
    }

    fn compile_into(&self, sig: &Signature, vars: &[&str], nodes: &mut Vec<Node>) -> Result<()> {
        match self {
            Term::Var(v) => {
                let slot = vars
                    .iter()
                    .position(|w| w == v)
                    .ok_or_else(|| Error::UnboundVariable(v.clone()))?;
                nodes.push(Node::Var(slot));
            }
            Term::App(op, args) => {
                let index = sig.index_of(op).ok_or_else(|| Error::UnknownOperation(op.clone()))?;
                let arity = sig.ops()[index].arity;
                if arity != args.len() {
                    return Err(Error::ArityMismatch {
                        op: op.clone(),
                        expected: arity,
                        found: args.len(),
                    });
                }
                for a in args {
                    a.compile_into(sig, vars, nodes)?;
                }
                nodes.push(Node::Op(index, arity));
            }
        }
        Ok(())
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(v),
            Term::App(op, args) => {
                write!(f, "({op}")?;
                for a in args {
                    write!(f, " {a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl FromStr for Term {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let tokens = tokenize(s);
        let mut pos = 0;
        let term = parse_at(&tokens, &mut pos)?;
        if pos != tokens.len() {
            return Err(Error::TermParse(format!("trailing input in `{s}`")));
        }
        Ok(term)
    }
}

fn tokenize(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in s.char_indices() {
        if ch == '(' || ch == ')' || ch.is_whitespace() {
            if let Some(st) = start.take() {
                out.push(&s[st..i]);
            }
            if !ch.is_whitespace() {
                out.push(&s[i..i + 1]);
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(st) = start {
        out.push(&s[st..]);
    }
    out
}

fn parse_at(tokens: &[&str], pos: &mut usize) -> Result<Term> {
    let tok = *tokens
        .get(*pos)
        .ok_or_else(|| Error::TermParse("unexpected end of input".into()))?;
    *pos += 1;
    match tok {
        "(" => {
            let op = *tokens
                .get(*pos)
                .ok_or_else(|| Error::TermParse("missing operation name".into()))?;
            if op == "(" || op == ")" {
                return Err(Error::TermParse(format!("expected operation name, found `{op}`")));
            }
            *pos += 1;
            let mut args = Vec::new();
            loop {
                match tokens.get(*pos) {
                    Some(&")") => {
                        *pos += 1;
                        return Ok(Term::App(op.to_string(), args));
                    }
                    Some(_) => args.push(parse_at(tokens, pos)?),
                    None => return Err(Error::TermParse("unbalanced parentheses".into())),
                }
            }
        }
        ")" => Err(Error::TermParse("unexpected `)`".into())),
        atom => Ok(Term::Var(atom.to_string())),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Node {
    Var(usize),
    Op(usize, usize),
}

/// A term resolved against a signature, stored in post-order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompiledTerm {
    nodes: Vec<Node>,
}

impl CompiledTerm {
    pub fn eval(&self, alg: &Algebra, env: &[usize]) -> usize {
        let mut stack: Vec<usize> = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            match *node {
                Node::Var(slot) => stack.push(env[slot]),
                Node::Op(op, arity) => {
                    let base = stack.len() - arity;
                    let v = alg.apply(op, &stack[base..]);
                    stack.truncate(base);
                    stack.push(v);
                }
            }
        }
        stack[0]
    }
}

/// Evaluates `t` in `alg` with variables bound by `env`.
pub fn eval_term(alg: &Algebra, t: &Term, env: &HashMap<String, usize>) -> Result<usize> {
    let vars: Vec<&str> = t.vars().into_iter().collect();
    let mut values = Vec::with_capacity(vars.len());
    for v in &vars {
        let value = *env.get(*v).ok_or_else(|| Error::UnboundVariable(v.to_string()))?;
        if value >= alg.size() {
            return Err(Error::IndexOutOfRange {
                index: value,
                size: alg.size(),
            });
        }
        values.push(value);
    }
    Ok(t.compile(alg.signature(), &vars)?.eval(alg, &values))
}

pub(crate) const MALTSEV_VARS: [&str; 3] = ["x", "y", "z"];

/// First failure of `p(x,y,y) = x` or `p(x,x,y) = y`, if any.
pub(crate) fn maltsev_violation(alg: &Algebra, p: &CompiledTerm) -> Option<(&'static str, usize, usize)> {
    for x in 0..alg.size() {
        for y in 0..alg.size() {
            if p.eval(alg, &[x, y, y]) != x {
                return Some(("p(x,y,y) = x", x, y));
            }
            if p.eval(alg, &[x, x, y]) != y {
                return Some(("p(x,x,y) = y", x, y));
            }
        }
    }
    None
}

/// Whether `p` satisfies both Mal'tsev identities on every pair of elements.
pub fn check_maltsev_term(alg: &Algebra, p: &Term) -> Result<bool> {
    let compiled = p.compile(alg.signature(), &MALTSEV_VARS)?;
    Ok(maltsev_violation(alg, &compiled).is_none())
}
