//! Text rendering in the grammar accepted by [`super::parse`].

use alloc::format;
use alloc::string::String;

use super::formula::Formula;

const IMP: u8 = 1;
const OR: u8 = 2;
const AND: u8 = 3;
const UNARY: u8 = 4;

/// Renders `a` with minimal parentheses; `B -> bot` is written `wneg B`.
pub fn render(a: &Formula) -> String {
    go(a, IMP, true)
}

fn go(a: &Formula, ctx: u8, rightmost: bool) -> String {
    let own = match a {
        Formula::And(..) => AND,
        Formula::Or(..) => OR,
        Formula::Implies(_, b) if **b != Formula::Bot => IMP,
        _ => UNARY,
    };
    let paren = ctx > own || (a.is_quantifier() && !rightmost);
    let rm = paren || rightmost;
    let body = match a {
        Formula::Top => String::from("top"),
        Formula::Bot => String::from("bot"),
        Formula::Atom(p, args) => {
            if args.is_empty() {
                p.clone()
            } else {
                let mut s = format!("{p}(");
                for (i, t) in args.iter().enumerate() {
                    if i > 0 {
                        s.push_str(", ");
                    }
                    s.push_str(&format!("{t}"));
                }
                s.push(')');
                s
            }
        }
        Formula::Not(b) => format!("~{}", go(b, UNARY, rm)),
        Formula::Implies(b, c) if **c == Formula::Bot => format!("wneg {}", go(b, UNARY, rm)),
        Formula::And(b, c) => format!("{} & {}", go(b, AND, false), go(c, UNARY, rm)),
        Formula::Or(b, c) => format!("{} | {}", go(b, OR, false), go(c, AND, rm)),
        Formula::Implies(b, c) => format!("{} -> {}", go(b, OR, false), go(c, IMP, rm)),
        Formula::Forall(x, b) => format!("forall {x}. {}", go(b, IMP, true)),
        Formula::Exists(x, b) => format!("exists {x}. {}", go(b, IMP, true)),
    };
    if paren {
        format!("({body})")
    } else {
        body
    }
}
