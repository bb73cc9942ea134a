//! Text front ends. Every printer in the crate emits the grammar its parser
//! here accepts.

use std::fmt;

use crate::error::{Error, ParseError, Result};
use crate::ideal::IdealExpr;
use crate::membership::QueryTerm;
use crate::ordinal::Ordinal;
use crate::scattered::LinTerm;
use crate::tree::{DiagKind, SchemaSeq, Seq, TreeSchema};

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn mark(&mut self) -> usize {
        self.skip_ws();
        self.pos
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse(ParseError::new(self.pos, msg))
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected '{c}'")))
        }
    }

    fn ident(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest
            .find(|c: char| !c.is_ascii_alphabetic())
            .unwrap_or(rest.len());
        if len == 0 {
            return Err(self.err("expected a name"));
        }
        self.pos += len;
        Ok(&rest[..len])
    }

    fn nat(&mut self) -> Result<u64> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(rest.len());
        if len == 0 {
            return Err(self.err("expected a natural number"));
        }
        let n = rest[..len]
            .parse()
            .map_err(|_| self.err("natural number out of range"))?;
        self.pos += len;
        Ok(n)
    }

    fn finish<T>(&mut self, v: T) -> Result<T> {
        if self.peek().is_some() {
            return Err(self.err("unexpected trailing input"));
        }
        Ok(v)
    }

    /// Comma-separated items up to (not including) `close`.
    fn list<T>(
        &mut self,
        close: char,
        mut item: impl FnMut(&mut Self) -> Result<T>,
    ) -> Result<Vec<T>> {
        let mut out = Vec::new();
        if self.peek() == Some(close) {
            return Ok(out);
        }
        loop {
            out.push(item(self)?);
            if !self.eat(',') {
                return Ok(out);
            }
        }
    }

    fn ordinal(&mut self) -> Result<Ordinal> {
        let mut acc = self.ord_term()?;
        while self.eat('+') {
            let t = self.ord_term()?;
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    fn ord_term(&mut self) -> Result<Ordinal> {
        let exp = match self.peek() {
            Some(c) if c.is_ascii_digit() => None,
            Some('w') => {
                self.pos += 1;
                Some(if self.eat('^') {
                    if self.eat('(') {
                        let e = self.ordinal()?;
                        self.expect(')')?;
                        e
                    } else if self.eat('w') {
                        Ordinal::omega()
                    } else {
                        Ordinal::nat(self.nat()?)
                    }
                } else {
                    Ordinal::one()
                })
            }
            _ => return Err(self.err("expected an ordinal")),
        };
        let base = match &exp {
            None => self.nat()?,
            Some(_) => 1,
        };
        let coeff = if self.eat('*') { self.nat()? } else { 1 };
        let c = base
            .checked_mul(coeff)
            .ok_or_else(|| self.err("coefficient out of range"))?;
        Ok(Ordinal::monomial(exp.unwrap_or_default(), c))
    }

    fn ideal(&mut self) -> Result<IdealExpr> {
        let start = self.mark();
        let name = self.ident()?;
        let e = match name {
            "FIN" => return Ok(IdealExpr::Fin),
            "POW" => return Ok(IdealExpr::Pow),
            "P" | "Q" | "PQ" | "limsum" => {
                self.expect('(')?;
                let a = self.ordinal()?;
                self.expect(')')?;
                match name {
                    "P" => IdealExpr::P(a),
                    "Q" => IdealExpr::Q(a),
                    "PQ" => IdealExpr::SumFin(vec![IdealExpr::P(a.clone()), IdealExpr::Q(a)]),
                    _ => IdealExpr::LimSum(a),
                }
            }
            "perp" | "omega" => {
                self.expect('(')?;
                let x = self.ideal()?;
                self.expect(')')?;
                if name == "perp" {
                    IdealExpr::perp(x)
                } else {
                    IdealExpr::omega(x)
                }
            }
            "sum" => {
                self.expect('(')?;
                let es = self.list(')', Self::ideal)?;
                self.expect(')')?;
                IdealExpr::sum(es).map_err(|_| self.err("sum needs at least one summand"))?
            }
            "mix" => {
                self.expect('(')?;
                let heads = self.list(';', Self::ideal)?;
                self.expect(';')?;
                let tail_pos = self.mark();
                let tail = self.ideal()?;
                self.expect(')')?;
                IdealExpr::mix(heads, tail).map_err(|_| {
                    Error::Parse(ParseError::new(
                        tail_pos,
                        "mix tail must be omega(..) or limsum(..)",
                    ))
                })?
            }
            other => {
                return Err(Error::Parse(ParseError::new(
                    start,
                    format!("unknown ideal constructor '{other}'"),
                )))
            }
        };
        Ok(e)
    }

    fn schema(&mut self) -> Result<TreeSchema> {
        let start = self.mark();
        let name = self.ident()?;
        self.schema_named(start, name)
    }

    fn schema_named(&mut self, start: usize, name: &str) -> Result<TreeSchema> {
        Ok(match name {
            "empty" => TreeSchema::Empty,
            "eps" => TreeSchema::Eps,
            "chain" => TreeSchema::Chain,
            "full" => TreeSchema::Full,
            "root" => {
                self.expect('(')?;
                let x = self.schema()?;
                self.expect(')')?;
                TreeSchema::rooted(x)
            }
            "fan" | "spine" => {
                self.expect('(')?;
                self.expect('[')?;
                let heads = self.list(']', Self::schema)?;
                self.expect(']')?;
                self.expect(';')?;
                let tail = self.tail()?;
                self.expect(')')?;
                if name == "fan" {
                    TreeSchema::fan(heads, tail)
                } else {
                    TreeSchema::spine(heads, tail)
                }
            }
            other => {
                return Err(Error::Parse(ParseError::new(
                    start,
                    format!("unknown schema constructor '{other}'"),
                )))
            }
        })
    }

    fn tail(&mut self) -> Result<SchemaSeq> {
        let start = self.mark();
        let name = self.ident()?;
        self.expect('(')?;
        let tail = match name {
            "const" => SchemaSeq::constant(self.schema()?),
            "qdiag" | "pdiag" => {
                let limit = self.ordinal()?;
                let offset = if self.eat(',') { self.nat()? } else { 0 };
                let kind = if name == "qdiag" {
                    DiagKind::Q
                } else {
                    DiagKind::P
                };
                SchemaSeq::diag_from(kind, limit, offset)?
            }
            other => {
                return Err(Error::Parse(ParseError::new(
                    start,
                    format!("unknown tail '{other}'"),
                )))
            }
        };
        self.expect(')')?;
        Ok(tail)
    }

    fn seq(&mut self) -> Result<Seq> {
        self.expect('<')?;
        let v = self.list('>', Self::nat)?;
        self.expect('>')?;
        Ok(Seq(v))
    }

    fn query(&mut self) -> Result<QueryTerm> {
        let start = self.mark();
        let name = self.ident()?;
        Ok(match name {
            "finset" => {
                self.expect('{')?;
                let es = self.list('}', Self::seq)?;
                self.expect('}')?;
                QueryTerm::finset(es)
                    .map_err(|e| Error::Parse(ParseError::new(start, e.to_string())))?
            }
            "transversal" => {
                self.expect('(')?;
                let at = self.mark();
                let t = self.schema()?;
                self.expect(')')?;
                QueryTerm::transversal(t)
                    .map_err(|_| Error::Parse(ParseError::new(at, "transversal needs a fan")))?
            }
            "union" => {
                self.expect('(')?;
                let a = self.query()?;
                self.expect(',')?;
                let b = self.query()?;
                self.expect(')')?;
                QueryTerm::union(a, b)
            }
            other => QueryTerm::Schema(self.schema_named(start, other)?),
        })
    }

    fn lin(&mut self) -> Result<LinTerm> {
        let start = self.mark();
        let name = self.ident()?;
        Ok(match name {
            "N" => LinTerm::Nat,
            "QQ" => LinTerm::RatQ,
            "rev" => {
                self.expect('(')?;
                let t = self.lin()?;
                self.expect(')')?;
                LinTerm::rev(t)
            }
            "cat" => {
                self.expect('(')?;
                let ts = self.list(')', Self::lin)?;
                self.expect(')')?;
                if ts.is_empty() {
                    return Err(self.err("cat needs at least one summand"));
                }
                LinTerm::Cat(ts)
            }
            "osum" => {
                self.expect('(')?;
                self.expect('[')?;
                let hs = self.list(']', Self::lin)?;
                self.expect(']')?;
                self.expect(';')?;
                let t = self.lin()?;
                self.expect(')')?;
                LinTerm::omega_cat(hs, t)
            }
            other => {
                return Err(Error::Parse(ParseError::new(
                    start,
                    format!("unknown order constructor '{other}'"),
                )))
            }
        })
    }
}

pub fn parse_ordinal(s: &str) -> Result<Ordinal> {
    let mut c = Cursor::new(s);
    let v = c.ordinal()?;
    c.finish(v)
}

pub fn parse_ideal(s: &str) -> Result<IdealExpr> {
    let mut c = Cursor::new(s);
    let v = c.ideal()?;
    c.finish(v)
}

pub fn parse_schema(s: &str) -> Result<TreeSchema> {
    let mut c = Cursor::new(s);
    let v = c.schema()?;
    c.finish(v)
}

pub fn parse_query(s: &str) -> Result<QueryTerm> {
    let mut c = Cursor::new(s);
    let v = c.query()?;
    c.finish(v)
}

pub fn parse_lin(s: &str) -> Result<LinTerm> {
    let mut c = Cursor::new(s);
    let v = c.lin()?;
    c.finish(v)
}

pub fn parse_seq(s: &str) -> Result<Seq> {
    let mut c = Cursor::new(s);
    let v = c.seq()?;
    c.finish(v)
}

impl fmt::Display for QueryTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QueryTerm::Schema(t) => write!(f, "{t}"),
            QueryTerm::FinSet(es) => {
                write!(f, "finset{{")?;
                for (i, e) in es.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{e}")?;
                }
                write!(f, "}}")
            }
            QueryTerm::Transversal(t) => write!(f, "transversal({t})"),
            QueryTerm::Union(a, b) => write!(f, "union({a},{b})"),
        }
    }
}

impl serde::Serialize for QueryTerm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordinals() {
        assert_eq!(parse_ordinal("0").unwrap(), Ordinal::zero());
        assert_eq!(
            parse_ordinal("w^2 + w*3 + 4").unwrap().to_string(),
            "w^2+w*3+4"
        );
        assert_eq!(parse_ordinal("1+w").unwrap(), Ordinal::omega());
        assert_eq!(
            parse_ordinal("w^(w+1)").unwrap(),
            Ordinal::omega_pow(Ordinal::omega().succ())
        );
        assert_eq!(parse_ordinal("w^w*2").unwrap().to_string(), "w^w*2");
        assert!(parse_ordinal("w^").is_err());
        assert!(parse_ordinal("x").is_err());
        assert!(parse_ordinal("w w").is_err());
    }

    #[test]
    fn ideal_round_trips() {
        for s in [
            "FIN",
            "POW",
            "P(w+1)",
            "perp(omega(Q(3)))",
            "sum(FIN,P(2),perp(POW))",
            "limsum(w^2)",
            "mix(FIN,Q(1); omega(P(4)))",
            "mix(; limsum(w))",
        ] {
            let e = parse_ideal(s).unwrap();
            assert_eq!(e.to_string(), s);
        }
        assert_eq!(
            parse_ideal("PQ(0)").unwrap(),
            IdealExpr::SumFin(vec![IdealExpr::P(0.into()), IdealExpr::Q(0.into())])
        );
        assert!(parse_ideal("mix(FIN; FIN)").is_err());
        assert!(parse_ideal("sum()").is_err());
    }

    #[test]
    fn schema_round_trips() {
        for s in [
            "chain",
            "fan([]; const(eps))",
            "spine([chain,empty]; pdiag(w^2))",
            "fan([full]; qdiag(w, 3))",
            "root(fan([]; const(chain)))",
        ] {
            assert_eq!(parse_schema(s).unwrap().to_string(), s);
        }
        assert_eq!(
            parse_schema("fan([]; qdiag(3))"),
            Err(Error::NotLimit(3.into()))
        );
        let err = parse_schema("fan([]; cons(eps))").unwrap_err();
        assert!(
            matches!(err, Error::Parse(ParseError { pos: 8, .. })),
            "{err:?}"
        );
    }

    #[test]
    fn query_round_trips() {
        for s in [
            "finset{<0,3,1>,<>}",
            "transversal(fan([]; const(chain)))",
            "union(chain,finset{<1>})",
            "spine([]; const(chain))",
        ] {
            assert_eq!(parse_query(s).unwrap().to_string(), s);
        }
        assert!(parse_query("transversal(chain)").is_err());
        assert!(parse_query("finset{<1>,<1>}").is_err());
    }

    #[test]
    fn lin_round_trips() {
        for s in ["N", "QQ", "rev(N)", "cat(N,rev(N))", "osum([N,QQ]; rev(N))"] {
            assert_eq!(parse_lin(s).unwrap().to_string(), s);
        }
        assert!(parse_lin("cat()").is_err());
    }
}
