use crate::staged::{Wh, WhNe};
use crate::syntax::{Nf, Term, Ty};

/// The smallest `x{k}` not already in use.
pub fn fresh_name(taken: &[String]) -> String {
    (0..).map(|k| format!("x{k}")).find(|n| !taken.contains(n)).expect("names are unbounded")
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Level {
    /// Lambdas may appear unparenthesized.
    Term,
    /// Right operand of `::` and `++`.
    Cons,
    /// Left operand of `::` and `++`, and function position.
    App,
    Atom,
}

/// Prints `t` with the given names for its free variables (oldest first).
pub fn pretty_term(names: &[String], t: &Term) -> String {
    let mut scope = names.to_vec();
    let mut out = String::new();
    go(&mut scope, t, Level::Term, &mut out);
    out
}

/// Prints a normal form; stuck lists appear as `(map f xs) ++ ys`.
pub fn pretty_nf(names: &[String], nf: &Nf) -> String {
    pretty_term(names, &nf.embed())
}

/// Prints a weak-head value. A closure shows its body with the
/// environment slots named `e0, e1, ...` (oldest first) and their values.
pub fn pretty_wh(names: &[String], w: &Wh) -> String {
    match w {
        Wh::Ne(n) => pretty_whne(names, n),
        Wh::Closure { dom, body, env } => {
            let slots: Vec<String> = (0..env.len()).map(|k| format!("e{k}")).collect();
            let lam = pretty_term(&slots, &Term::Lam(dom.clone(), body.clone()));
            let vals: Vec<String> =
                env.values().iter().zip(&slots).map(|(v, e)| format!("{e} = {}", pretty_wh(names, v))).collect();
            if vals.is_empty() {
                format!("{{{lam}}}")
            } else {
                format!("{{{lam} | {}}}", vals.join(", "))
            }
        }
        Wh::TT => "()".into(),
        Wh::Pair(a, b) => format!("({}, {})", pretty_wh(names, a), pretty_wh(names, b)),
        Wh::Nil => "nil".into(),
        Wh::Cons(h, t) => format!("{} :: {}", wh_atom(names, h), pretty_wh(names, t)),
    }
}

fn pretty_whne(names: &[String], n: &WhNe) -> String {
    match n {
        WhNe::Var(i) => match names.len().checked_sub(i + 1) {
            Some(k) => names[k].clone(),
            None => format!("#{i}"),
        },
        WhNe::App(f, a) => format!("{} {}", pretty_whne(names, f), wh_atom(names, a)),
        WhNe::Fst(p) => format!("fst {}", whne_atom(names, p)),
        WhNe::Snd(p) => format!("snd {}", whne_atom(names, p)),
        WhNe::Fold(c, n, m, _) => {
            format!("fold {} {} {}", wh_atom(names, c), wh_atom(names, n), whne_atom(names, m))
        }
        WhNe::Map(f, m, _) => format!("map {} {}", wh_atom(names, f), whne_atom(names, m)),
        WhNe::Append(m, ys) => format!("{} ++ {}", whne_atom(names, m), wh_atom(names, ys)),
    }
}

fn wh_atom(names: &[String], w: &Wh) -> String {
    match w {
        Wh::Ne(n) => whne_atom(names, n),
        Wh::Cons(..) => format!("({})", pretty_wh(names, w)),
        _ => pretty_wh(names, w),
    }
}

fn whne_atom(names: &[String], n: &WhNe) -> String {
    match n {
        WhNe::Var(_) => pretty_whne(names, n),
        _ => format!("({})", pretty_whne(names, n)),
    }
}

fn go(scope: &mut Vec<String>, t: &Term, level: Level, out: &mut String) {
    let wrap = |out: &mut String, needed: bool, f: &mut dyn FnMut(&mut String)| {
        if needed {
            out.push('(');
        }
        f(out);
        if needed {
            out.push(')');
        }
    };
    match t {
        Term::Var(i) => match scope.len().checked_sub(i + 1) {
            Some(k) => out.push_str(&scope[k]),
            None => out.push_str(&format!("#{i}")),
        },
        Term::TT => out.push_str("()"),
        Term::Nil(e) => out.push_str(&format!("nil:{}", Ty::list(e.clone()))),
        Term::Pair(a, b) => {
            out.push('(');
            go(scope, a, Level::Term, out);
            out.push_str(", ");
            go(scope, b, Level::Term, out);
            out.push(')');
        }
        Term::Lam(d, body) => wrap(out, level > Level::Term, &mut |out| {
            let x = fresh_name(scope);
            out.push_str(&format!("\\{x}:{d}. "));
            scope.push(x);
            go(scope, body, Level::Term, out);
            scope.pop();
        }),
        Term::Cons(a, b) | Term::Append(a, b) => wrap(out, level > Level::Cons, &mut |out| {
            // A map or fold on the left is bracketed for readability.
            let left = if matches!(**a, Term::Map(..) | Term::Fold(..)) { Level::Atom } else { Level::App };
            go(scope, a, left, out);
            out.push_str(if matches!(t, Term::Cons(..)) { " :: " } else { " ++ " });
            go(scope, b, Level::Cons, out);
        }),
        Term::App(f, a) => wrap(out, level > Level::App, &mut |out| {
            go(scope, f, Level::App, out);
            out.push(' ');
            go(scope, a, Level::Atom, out);
        }),
        Term::Fst(p) | Term::Snd(p) => wrap(out, level > Level::App, &mut |out| {
            out.push_str(if matches!(t, Term::Fst(_)) { "fst " } else { "snd " });
            go(scope, p, Level::Atom, out);
        }),
        Term::Map(f, xs, _) => wrap(out, level > Level::App, &mut |out| {
            out.push_str("map ");
            go(scope, f, Level::Atom, out);
            out.push(' ');
            go(scope, xs, Level::Atom, out);
        }),
        Term::Fold(c, n, xs, _) => wrap(out, level > Level::App, &mut |out| {
            out.push_str("fold ");
            go(scope, c, Level::Atom, out);
            out.push(' ');
            go(scope, n, Level::Atom, out);
            out.push(' ');
            go(scope, xs, Level::Atom, out);
        }),
    }
}
