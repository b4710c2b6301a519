use std::fmt::Write;

use super::{BoolExpr, NetworkFile};

fn precedence(e: &BoolExpr) -> u8 {
    match e {
        BoolExpr::Or(..) => 1,
        BoolExpr::Xor(..) => 2,
        BoolExpr::And(..) => 3,
        BoolExpr::Not(_) => 4,
        BoolExpr::Const(_) | BoolExpr::Var(_) => 5,
    }
}

fn write_child(out: &mut String, child: &BoolExpr, parens: bool) {
    if parens {
        out.push('(');
        write_expr(out, child);
        out.push(')');
    } else {
        write_expr(out, child);
    }
}

fn write_expr(out: &mut String, e: &BoolExpr) {
    match e {
        BoolExpr::Const(b) => out.push(if *b { '1' } else { '0' }),
        BoolExpr::Var(i) => write!(out, "x{i}").unwrap(),
        BoolExpr::Not(inner) => {
            out.push('!');
            write_child(out, inner, precedence(inner) < 4);
        }
        BoolExpr::And(a, b) | BoolExpr::Xor(a, b) | BoolExpr::Or(a, b) => {
            let p = precedence(e);
            let op = match e {
                BoolExpr::And(..) => " & ",
                BoolExpr::Xor(..) => " ^ ",
                _ => " | ",
            };
            // operators associate to the left, so a right operand of the
            // same precedence keeps its parentheses
            write_child(out, a, precedence(a) < p);
            out.push_str(op);
            write_child(out, b, precedence(b) <= p);
        }
    }
}

/// Canonical text of one expression, with the fewest parentheses that
/// parse back to the same tree.
pub fn print_expr(e: &BoolExpr) -> String {
    let mut out = String::new();
    write_expr(&mut out, e);
    out
}

/// One `x<i> = <expr>` line per coordinate, in index order.
pub fn print_network(file: &NetworkFile) -> String {
    let mut out = String::new();
    for (i, e) in file.equations().iter().enumerate() {
        writeln!(out, "x{} = {}", i + 1, print_expr(e)).unwrap();
    }
    out
}
