use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;

use super::ast::{Formula, ObjectTerm, SortExpr};
use super::is_variable_name;
use super::lexer::{tokenize, Tok, Token};
use super::subst;
use crate::error::{Error, Result};
use crate::symbol::Symbol;

/// Parses a closed or open formula. Free identifiers spelled like variables
/// (see [`is_variable_name`](super::is_variable_name)) become variables, every
/// other free identifier a constant.
pub fn parse_formula(text: &str) -> Result<Formula> {
    parse_formula_with(text, &[])
}

/// Like [`parse_formula`], treating `bound` as variables whatever their
/// spelling. Used for concept declarations, which bind the comprehension
/// variable outside the formula text.
pub fn parse_formula_with(text: &str, bound: &[Symbol]) -> Result<Formula> {
    let mut p = Parser::new(text, bound)?;
    let f = p.formula()?;
    p.expect_eof()?;
    let mut avoid = f.free_vars();
    avoid.extend(bound.iter().cloned());
    Ok(subst::freshen_formula(&f, &avoid))
}

pub fn parse_object(text: &str) -> Result<ObjectTerm> {
    parse_object_with(text, &[])
}

pub fn parse_object_with(text: &str, bound: &[Symbol]) -> Result<ObjectTerm> {
    let mut p = Parser::new(text, bound)?;
    let t = p.object()?;
    p.expect_eof()?;
    let mut avoid = t.free_vars();
    avoid.extend(bound.iter().cloned());
    Ok(subst::freshen_object(&t, &avoid))
}

pub fn parse_sort(text: &str) -> Result<SortExpr> {
    let mut p = Parser::new(text, &[])?;
    let s = p.sort()?;
    p.expect_eof()?;
    Ok(s)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    scope: Vec<Symbol>,
}

const KW_FALSE: &str = "false";
const KW_FORALL: &str = "forall";
const KW_EXISTS: &str = "exists";
const KW_THE: &str = "the";
const KW_IN: &str = "in";

impl Parser {
    fn new(text: &str, bound: &[Symbol]) -> Result<Self> {
        Ok(Parser {
            toks: tokenize(text)?,
            pos: 0,
            scope: bound.to_vec(),
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, offset: usize) -> &Tok {
        let i = (self.pos + offset).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: Vec<&'static str>) -> Error {
        let t = &self.toks[self.pos];
        Error::Syntax {
            position: t.pos,
            expected,
            found: t.tok.describe(),
        }
    }

    fn expect(&mut self, tok: Tok, what: &'static str) -> Result<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(vec![what]))
        }
    }

    fn expect_eof(&self) -> Result<()> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            Err(self.error(vec!["end of input"]))
        }
    }

    fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn ident(&mut self) -> Result<Symbol> {
        match self.peek() {
            Tok::Ident(s) if !super::KEYWORDS.contains(&s.as_str()) => {
                let sym = Symbol::new(s);
                self.bump();
                Ok(sym)
            }
            _ => Err(self.error(vec!["identifier"])),
        }
    }

    fn is_var(&self, name: &Symbol) -> bool {
        self.scope.iter().any(|v| v == name) || is_variable_name(name.as_str())
    }

    // formula := disjunction [ ('=>' | '<->') formula ]
    fn formula(&mut self) -> Result<Formula> {
        let left = self.disjunction()?;
        match self.peek() {
            Tok::Implies => {
                self.bump();
                let right = self.formula()?;
                Ok(Formula::implies(left, right))
            }
            Tok::Iff => {
                self.bump();
                let right = self.formula()?;
                Ok(Formula::iff(left, right))
            }
            _ => Ok(left),
        }
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut acc = self.conjunction()?;
        while *self.peek() == Tok::Bar {
            self.bump();
            let rhs = self.conjunction()?;
            acc = Formula::or(acc, rhs);
        }
        Ok(acc)
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            let rhs = self.unary()?;
            acc = Formula::and(acc, rhs);
        }
        Ok(acc)
    }

    fn binder(&mut self) -> Result<(Symbol, SortExpr)> {
        let var = self.ident()?;
        self.expect(Tok::Colon, "':'")?;
        let sort = self.sort()?;
        self.expect(Tok::Dot, "'.'")?;
        Ok((var, sort))
    }

    fn scoped_formula(&mut self, var: &Symbol) -> Result<Formula> {
        self.scope.push(var.clone());
        let body = self.formula();
        self.scope.pop();
        body
    }

    fn unary(&mut self) -> Result<Formula> {
        if self.is_keyword(KW_FORALL) || self.is_keyword(KW_EXISTS) {
            let universal = self.is_keyword(KW_FORALL);
            self.bump();
            let (var, sort) = self.binder()?;
            let body = Box::new(self.scoped_formula(&var)?);
            return Ok(if universal {
                Formula::Forall(var, sort, body)
            } else {
                Formula::Exists(var, sort, body)
            });
        }
        if self.is_keyword(KW_FALSE) {
            self.bump();
            return Ok(Formula::Falsum);
        }
        if *self.peek() == Tok::LParen {
            // Either a parenthesized formula or a parenthesized object that
            // starts an atom; try the formula reading first.
            let save = self.pos;
            let grouped = (|| {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen, "')'")?;
                Ok::<_, Error>(f)
            })();
            match grouped {
                Ok(f) if !matches!(self.peek(), Tok::Eq | Tok::LParen)
                    && !self.is_keyword(KW_IN) =>
                {
                    return Ok(f)
                }
                Ok(_) => self.pos = save,
                Err(formula_err) => {
                    self.pos = save;
                    return self.atom().map_err(|object_err| furthest(formula_err, object_err));
                }
            }
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Formula> {
        let left = self.object()?;
        if *self.peek() == Tok::Eq {
            self.bump();
            let right = self.object()?;
            return Ok(Formula::Equation(left, right));
        }
        if self.is_keyword(KW_IN) {
            self.bump();
            let right = self.object()?;
            return Ok(Formula::Membership(left, right));
        }
        // `y(h)` in formula position reads as `h in y`.
        match left {
            ObjectTerm::Apply(fun, arg) => Ok(Formula::Membership(*arg, *fun)),
            ObjectTerm::FuncApp(name, arg) => Ok(Formula::Membership(*arg, ObjectTerm::Const(name))),
            _ => Err(self.error(vec!["'='", "'in'"])),
        }
    }

    fn object(&mut self) -> Result<ObjectTerm> {
        if self.is_keyword(KW_THE) {
            self.bump();
            let (var, sort) = self.binder()?;
            let body = self.scoped_formula(&var)?;
            return Ok(ObjectTerm::Description(var, sort, Box::new(body)));
        }
        let mut acc = self.primary()?;
        while *self.peek() == Tok::LParen {
            self.bump();
            let arg = self.object()?;
            self.expect(Tok::RParen, "')'")?;
            acc = ObjectTerm::apply(acc, arg);
        }
        Ok(acc)
    }

    fn primary(&mut self) -> Result<ObjectTerm> {
        match self.peek().clone() {
            Tok::Ident(_) => {
                let name = self.ident()?;
                let is_var = self.is_var(&name);
                if !is_var && *self.peek() == Tok::LParen {
                    self.bump();
                    let arg = self.object()?;
                    self.expect(Tok::RParen, "')'")?;
                    return Ok(ObjectTerm::FuncApp(name, Box::new(arg)));
                }
                Ok(if is_var {
                    ObjectTerm::Var(name)
                } else {
                    ObjectTerm::Const(name)
                })
            }
            Tok::LBracket => {
                self.bump();
                let left = self.object()?;
                self.expect(Tok::Comma, "','")?;
                let right = self.object()?;
                self.expect(Tok::RBracket, "']'")?;
                Ok(ObjectTerm::pair(left, right))
            }
            Tok::LParen => {
                self.bump();
                let t = self.object()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(t)
            }
            _ => Err(self.error(vec!["identifier", "'['", "'('", "'the'"])),
        }
    }

    // sort := sort_atom { '*' sort_atom }
    fn sort(&mut self) -> Result<SortExpr> {
        let mut acc = self.sort_atom()?;
        while *self.peek() == Tok::Star {
            self.bump();
            let rhs = self.sort_atom()?;
            acc = SortExpr::product(acc, rhs);
        }
        Ok(acc)
    }

    fn sort_atom(&mut self) -> Result<SortExpr> {
        match self.peek() {
            Tok::Ident(_) => Ok(SortExpr::Base(self.ident()?)),
            Tok::LBracket => {
                self.bump();
                let inner = self.sort()?;
                self.expect(Tok::RBracket, "']'")?;
                Ok(SortExpr::power(inner))
            }
            Tok::LParen => {
                self.bump();
                if matches!(self.peek(), Tok::Ident(_)) && *self.peek_at(1) == Tok::Arrow {
                    let world = self.ident()?;
                    self.bump();
                    let cod = self.sort()?;
                    self.expect(Tok::RParen, "')'")?;
                    return Ok(SortExpr::Arrow(world, Box::new(cod)));
                }
                let inner = self.sort()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            _ => Err(self.error(vec!["sort"])),
        }
    }
}

fn furthest(a: Error, b: Error) -> Error {
    match (&a, &b) {
        (Error::Syntax { position: pa, .. }, Error::Syntax { position: pb, .. }) if pa > pb => a,
        _ => b,
    }
}
