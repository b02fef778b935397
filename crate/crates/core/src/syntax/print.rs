use core::fmt::{self, Display, Formatter};

use super::ast::{Formula, ObjectTerm, SortExpr};
use super::is_variable_name;

impl Display for SortExpr {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            SortExpr::Base(name) => write!(f, "{name}"),
            SortExpr::Power(inner) => write!(f, "[{inner}]"),
            SortExpr::Product(l, r) => {
                write!(f, "{l} * ")?;
                if matches!(**r, SortExpr::Product(..)) {
                    write!(f, "({r})")
                } else {
                    write!(f, "{r}")
                }
            }
            SortExpr::Arrow(w, cod) => write!(f, "({w} -> {cod})"),
        }
    }
}

impl Display for ObjectTerm {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            ObjectTerm::Description(v, s, body) => write!(f, "the {v} : {s} . {body}"),
            _ => write_object(self, f),
        }
    }
}

/// Object in operand position: descriptions get parentheses.
fn write_object(t: &ObjectTerm, f: &mut Formatter<'_>) -> fmt::Result {
    match t {
        ObjectTerm::Var(v) | ObjectTerm::Const(v) => write!(f, "{v}"),
        ObjectTerm::FuncApp(g, a) => {
            write!(f, "{g}(")?;
            write_object(a, f)?;
            write!(f, ")")
        }
        ObjectTerm::Pair(l, r) => {
            write!(f, "[")?;
            write_object(l, f)?;
            write!(f, ", ")?;
            write_object(r, f)?;
            write!(f, "]")
        }
        ObjectTerm::Apply(fun, arg) => {
            // A bare constant head would read back as a function constant,
            // and a bare free name not spelled like a variable as a constant.
            let bare = match &**fun {
                ObjectTerm::Var(v) => is_variable_name(v.as_str()),
                ObjectTerm::Apply(..) | ObjectTerm::Pair(..) | ObjectTerm::FuncApp(..) => true,
                _ => false,
            };
            if bare {
                write_object(fun, f)?;
            } else {
                write!(f, "(")?;
                write_object(fun, f)?;
                write!(f, ")")?;
            }
            write!(f, "(")?;
            write_object(arg, f)?;
            write!(f, ")")
        }
        ObjectTerm::Description(..) => write!(f, "({t})"),
    }
}

fn level(fm: &Formula) -> u8 {
    match fm {
        Formula::Forall(..) | Formula::Exists(..) => 0,
        Formula::Implies(..) => 1,
        Formula::Or(..) => 2,
        Formula::And(..) => 3,
        _ => 4,
    }
}

fn write_operand(fm: &Formula, parens: bool, f: &mut Formatter<'_>) -> fmt::Result {
    if parens {
        write!(f, "({fm})")
    } else {
        write!(f, "{fm}")
    }
}

impl Display for Formula {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Falsum => write!(f, "false"),
            Formula::Equation(l, r) => {
                write_object(l, f)?;
                write!(f, " = ")?;
                write_object(r, f)
            }
            Formula::Membership(l, r) => {
                write_object(l, f)?;
                write!(f, " in ")?;
                write_object(r, f)
            }
            Formula::And(l, r) | Formula::Or(l, r) => {
                let (lv, op) = if matches!(self, Formula::And(..)) { (3, "&") } else { (2, "|") };
                let ll = level(l);
                write_operand(l, ll == 0 || ll < lv, f)?;
                write!(f, " {op} ")?;
                write_operand(r, level(r) <= lv, f)
            }
            Formula::Implies(l, r) => {
                write_operand(l, level(l) <= 1, f)?;
                write!(f, " => ")?;
                let rl = level(r);
                write_operand(r, rl == 0 || rl < 1, f)
            }
            Formula::Forall(v, s, body) => write!(f, "forall {v} : {s} . {body}"),
            Formula::Exists(v, s, body) => write!(f, "exists {v} : {s} . {body}"),
        }
    }
}
