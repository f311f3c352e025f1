//! The query language: one keyword, then operands.
//!
//! ```text
//! prob E
//! complement E
//! union E F
//! cond A given B
//! bayes B given A
//! total A over H1, H2, ...
//! independent A B
//! dist X [in {v, ...}]
//! joint X in {v, ...} Y in {w, ...}
//! conddist X in {v, ...} given Y in {w, ...}
//! expect X [over E]
//! integrate c1 on E1, c2 on E2, ...
//! ```
//!
//! Events are model event names or inline label sets such as `{1,3}`.

use std::fmt;

use super::model::{parse_value, Model};
use super::Failure;
use crate::algebra::Structure;
use crate::inference::{bayes, conditional, total_probability, ConditioningResult};
use crate::integral::{expected_value, integrate_over, integrate_simple, SimpleFunction};
use crate::measure::ProbabilityMeasure;
use crate::randvar::{
    conditional_distribution, conditional_distribution_by_marginal, joint, pushforward,
    RandomVariable, ValueSet,
};
use crate::space::Event;

type Bound<'m, V> = (&'m RandomVariable<V>, ValueSet<V>);

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Word(String),
    Set(Vec<String>),
    Comma,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Word(w) => f.write_str(w),
            Token::Set(items) => write!(f, "{{{}}}", items.join(",")),
            Token::Comma => f.write_str(","),
        }
    }
}

fn tokenize(input: &str) -> Result<Vec<Token>, Failure> {
    let mut tokens = vec![];
    let mut chars = input.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            ',' => {
                chars.next();
                tokens.push(Token::Comma);
            }
            '{' => {
                chars.next();
                let mut body = String::new();
                loop {
                    match chars.next() {
                        Some('}') => break,
                        Some('{') => return Err(grammar("nested `{`")),
                        Some(ch) => body.push(ch),
                        None => return Err(grammar("unclosed `{`")),
                    }
                }
                let items = if body.trim().is_empty() {
                    vec![]
                } else {
                    body.split(',').map(|s| s.trim().to_string()).collect()
                };
                if items.iter().any(String::is_empty) {
                    return Err(grammar("empty item in set"));
                }
                tokens.push(Token::Set(items));
            }
            '}' => return Err(grammar("unmatched `}`")),
            _ => {
                let mut word = String::new();
                while let Some(&ch) = chars.peek() {
                    if ch.is_whitespace() || matches!(ch, ',' | '{' | '}') {
                        break;
                    }
                    word.push(ch);
                    chars.next();
                }
                tokens.push(Token::Word(word));
            }
        }
    }
    Ok(tokens)
}

fn grammar(msg: impl fmt::Display) -> Failure {
    Failure::Usage(format!("query: {msg}"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EventRef {
    Named(String),
    Inline(Vec<String>),
}

/// `X in {v, ...}` with the literals still unparsed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarIn {
    pub var: String,
    pub values: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Query {
    Prob(EventRef),
    Complement(EventRef),
    Union(EventRef, EventRef),
    Cond {
        a: EventRef,
        b: EventRef,
    },
    Bayes {
        b: EventRef,
        a: EventRef,
    },
    Total {
        a: EventRef,
        cells: Vec<EventRef>,
    },
    Independent(EventRef, EventRef),
    Dist {
        var: String,
        values: Option<Vec<String>>,
    },
    Joint(VarIn, VarIn),
    CondDist {
        x: VarIn,
        y: VarIn,
    },
    Expect {
        var: String,
        over: Option<EventRef>,
    },
    Integrate(Vec<(String, EventRef)>),
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn at_end(&self) -> bool {
        self.pos >= self.tokens.len()
    }

    fn word(&mut self, what: &str) -> Result<String, Failure> {
        match self.next() {
            Some(Token::Word(w)) => Ok(w),
            Some(t) => Err(grammar(format!("expected {what}, found `{t}`"))),
            None => Err(grammar(format!("expected {what}"))),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), Failure> {
        match self.next() {
            Some(Token::Word(w)) if w == kw => Ok(()),
            Some(t) => Err(grammar(format!("expected `{kw}`, found `{t}`"))),
            None => Err(grammar(format!("expected `{kw}`"))),
        }
    }

    fn set(&mut self) -> Result<Vec<String>, Failure> {
        match self.next() {
            Some(Token::Set(items)) => Ok(items),
            Some(t) => Err(grammar(format!("expected a value set, found `{t}`"))),
            None => Err(grammar("expected a value set")),
        }
    }

    fn event(&mut self) -> Result<EventRef, Failure> {
        match self.next() {
            Some(Token::Word(w)) => Ok(EventRef::Named(w)),
            Some(Token::Set(items)) => Ok(EventRef::Inline(items)),
            Some(Token::Comma) => Err(grammar("expected an event, found `,`")),
            None => Err(grammar("expected an event")),
        }
    }

    fn var_in(&mut self) -> Result<VarIn, Failure> {
        let var = self.word("a variable name")?;
        self.keyword("in")?;
        Ok(VarIn {
            var,
            values: self.set()?,
        })
    }

    fn comma_list<T>(
        &mut self,
        mut item: impl FnMut(&mut Self) -> Result<T, Failure>,
    ) -> Result<Vec<T>, Failure> {
        let mut out = vec![item(self)?];
        while self.peek() == Some(&Token::Comma) {
            self.next();
            out.push(item(self)?);
        }
        Ok(out)
    }

    fn finish(&self) -> Result<(), Failure> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(grammar(format!("unexpected `{t}`"))),
        }
    }
}

impl Query {
    pub fn parse(input: &str) -> Result<Query, Failure> {
        let mut p = Parser {
            tokens: tokenize(input)?,
            pos: 0,
        };
        let kw = p.word("a query keyword")?;
        let q = match kw.as_str() {
            "prob" => Query::Prob(p.event()?),
            "complement" => Query::Complement(p.event()?),
            "union" => Query::Union(p.event()?, p.event()?),
            "independent" => Query::Independent(p.event()?, p.event()?),
            "cond" => {
                let a = p.event()?;
                p.keyword("given")?;
                Query::Cond { a, b: p.event()? }
            }
            "bayes" => {
                let b = p.event()?;
                p.keyword("given")?;
                Query::Bayes { b, a: p.event()? }
            }
            "total" => {
                let a = p.event()?;
                p.keyword("over")?;
                Query::Total {
                    a,
                    cells: p.comma_list(Parser::event)?,
                }
            }
            "dist" => {
                let var = p.word("a variable name")?;
                let values = if p.at_end() {
                    None
                } else {
                    p.keyword("in")?;
                    Some(p.set()?)
                };
                Query::Dist { var, values }
            }
            "joint" => Query::Joint(p.var_in()?, p.var_in()?),
            "conddist" => {
                let x = p.var_in()?;
                p.keyword("given")?;
                Query::CondDist { x, y: p.var_in()? }
            }
            "expect" => {
                let var = p.word("a variable name")?;
                let over = if p.at_end() {
                    None
                } else {
                    p.keyword("over")?;
                    Some(p.event()?)
                };
                Query::Expect { var, over }
            }
            "integrate" => Query::Integrate(p.comma_list(|p| {
                let c = p.word("a coefficient")?;
                p.keyword("on")?;
                Ok((c, p.event()?))
            })?),
            other => return Err(grammar(format!("unknown keyword `{other}`"))),
        };
        p.finish()?;
        Ok(q)
    }
}

/// Evaluates queries against one model.
pub struct Evaluator<'a, S: Structure> {
    model: &'a Model<S>,
    p: &'a ProbabilityMeasure<S>,
}

impl<'a, S: Structure> Evaluator<'a, S> {
    pub fn new(model: &'a Model<S>, p: &'a ProbabilityMeasure<S>) -> Self {
        Evaluator { model, p }
    }

    fn s(&self) -> &S {
        self.p.structure()
    }

    fn render(&self, v: &S::Value) -> String {
        self.s().render(v)
    }

    fn event(&self, r: &EventRef) -> Result<Event, Failure> {
        match r {
            EventRef::Named(n) => self
                .model
                .events
                .get(n)
                .cloned()
                .ok_or_else(|| Failure::Usage(format!("unknown event `{n}`"))),
            EventRef::Inline(labels) => {
                let space = self.p.space();
                if let Some(l) = labels.iter().find(|l| space.index_of(l).is_none()) {
                    return Err(Failure::Usage(format!("unknown outcome `{l}`")));
                }
                Ok(space.event_from_labels(labels)?)
            }
        }
    }

    fn var(&self, name: &str) -> Result<&RandomVariable<S::Value>, Failure> {
        self.model
            .variables
            .get(name)
            .ok_or_else(|| Failure::Usage(format!("unknown variable `{name}`")))
    }

    fn values(&self, lits: &[String]) -> Result<ValueSet<S::Value>, Failure> {
        let vals = lits
            .iter()
            .map(|l| parse_value(self.s(), l, "value set"))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ValueSet::new(self.s(), vals))
    }

    fn var_in(&self, v: &VarIn) -> Result<Bound<'_, S::Value>, Failure> {
        Ok((self.var(&v.var)?, self.values(&v.values)?))
    }

    fn conditioning(&self, r: &ConditioningResult<S::Value>) -> (String, String) {
        match r {
            ConditioningResult::Unique(v) => (self.render(v), "unique".into()),
            ConditioningResult::Residuated { value, verified } => (
                self.render(value),
                format!("residuated, verified={verified}"),
            ),
            ConditioningResult::Unconditionable(reason) => {
                ("none".into(), format!("unconditionable: {reason}"))
            }
        }
    }

    /// Output lines for one query, without the echo line.
    pub fn eval(&self, q: &Query) -> Result<Vec<String>, Failure> {
        let p = self.p;
        let value = |v: &S::Value| format!("value: {}", self.render(v));
        Ok(match q {
            Query::Prob(e) => vec![value(&p.prob(&self.event(e)?)?)],
            Query::Complement(e) => vec![value(&p.prob(&self.event(e)?.complement())?)],
            Query::Union(a, b) => {
                let u = self.event(a)?.union(&self.event(b)?)?;
                vec![value(&p.prob(&u)?)]
            }
            Query::Independent(a, b) => {
                let ind = p.is_independent(&self.event(a)?, &self.event(b)?)?;
                vec![format!("value: {ind}")]
            }
            Query::Cond { a, b } => {
                let (v, flags) =
                    self.conditioning(&conditional(p, &self.event(a)?, &self.event(b)?)?);
                vec![format!("value: {v}"), format!("flags: {flags}")]
            }
            Query::Bayes { b, a } => {
                let (v, flags) = self.conditioning(&bayes(p, &self.event(a)?, &self.event(b)?)?);
                vec![format!("value: {v}"), format!("flags: {flags}")]
            }
            Query::Total { a, cells } => {
                let a = self.event(a)?;
                let cells = cells
                    .iter()
                    .map(|c| self.event(c))
                    .collect::<Result<Vec<_>, _>>()?;
                let total = total_probability(p, &a, &cells)?;
                let direct = p.prob(&a)?;
                vec![
                    value(&total),
                    format!("flags: matches-direct={}", self.s().equal(&total, &direct)),
                ]
            }
            Query::Dist {
                var,
                values: Some(lits),
            } => {
                let x = self.var(var)?;
                vec![value(&pushforward(p, x, &self.values(lits)?)?)]
            }
            Query::Dist { var, values: None } => {
                let s = self.s();
                let x = self.var(var)?;
                let mut range = x.range(s).values().to_vec();
                range.sort_by(|a, b| s.compare(a, b));
                range
                    .iter()
                    .map(|v| {
                        let pv = pushforward(p, x, &ValueSet::new(s, [v.clone()]))?;
                        Ok(format!("value: {} -> {}", self.render(v), self.render(&pv)))
                    })
                    .collect::<Result<Vec<_>, Failure>>()?
            }
            Query::Joint(xa, yb) => {
                let (x, a) = self.var_in(xa)?;
                let (y, b) = self.var_in(yb)?;
                vec![value(&joint(p, x, y, &a, &b)?)]
            }
            Query::CondDist { x: xa, y: yb } => {
                let (x, a) = self.var_in(xa)?;
                let (y, b) = self.var_in(yb)?;
                let main = conditional_distribution(p, x, &a, y, &b)?;
                let lit = conditional_distribution_by_marginal(p, x, &a, y, &b)?;
                let (v, flags) = self.conditioning(&main);
                let (lv, lflags) = self.conditioning(&lit);
                let agree = match (main.value(), lit.value()) {
                    (Some(m), Some(l)) => self.s().equal(m, l),
                    _ => false,
                };
                vec![
                    format!("value: {v}"),
                    format!("flags: {flags}"),
                    format!("by-marginal: {lv} ({lflags})"),
                    format!("readings-agree: {agree}"),
                ]
            }
            Query::Expect { var, over: None } => vec![value(&expected_value(p, self.var(var)?)?)],
            Query::Expect { var, over: Some(e) } => {
                vec![value(&integrate_over(p, self.var(var)?, &self.event(e)?)?)]
            }
            Query::Integrate(terms) => {
                let terms = terms
                    .iter()
                    .map(|(c, e)| Ok((parse_value(self.s(), c, "coefficient")?, self.event(e)?)))
                    .collect::<Result<Vec<_>, Failure>>()?;
                vec![value(&integrate_simple(p, &SimpleFunction::new(terms))?)]
            }
        })
    }
}
