//! The group-construction language used by the CLI and catalog files.
//!
//! ```text
//! spec := name '(' args ')'
//!       | 'product(' spec ',' spec ')'
//!       | 'centralproduct(' spec ',' spec ')'
//!       | 'file:' path
//! args := [arg (',' arg)*]        arg := [name '='] value
//! ```
//!
//! Whitespace is ignored outside `file:` paths, and parameters may be given
//! positionally or by name, e.g. `extraspecial(p=3, n=2, variant=plus)`.

use std::fmt;
use std::path::PathBuf;

use thiserror::Error;

use crate::arith::is_prime;
use crate::cayley::{read_cayley_table, CayleyError};
use crate::constructions::{
    abelian, cyclic, dihedral, extraspecial, heisenberg, modular_p3, quaternion,
    smallest_central_of_prime_order, symmetric, Variant,
};
use crate::group::{ElementId, GroupError, GroupTable, Validation, DEFAULT_ORDER_CAP};

/// Nesting limit for `product`/`centralproduct`.
pub const MAX_NESTING: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    Abelian(Vec<u64>),
    Cyclic(u64),
    Dihedral(u64),
    Quaternion(u64),
    Heisenberg(u64),
    ModularP3(u64),
    Extraspecial { p: u64, n: u32, variant: Variant },
    Symmetric(u32),
    DirectProduct(Box<GroupSpec>, Box<GroupSpec>),
    CentralProduct(Box<GroupSpec>, Box<GroupSpec>),
    CayleyFile(PathBuf),
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Abelian(orders) => {
                let args: Vec<String> = orders.iter().map(u64::to_string).collect();
                write!(f, "abelian({})", args.join(","))
            }
            GroupSpec::Cyclic(n) => write!(f, "cyclic({n})"),
            GroupSpec::Dihedral(n) => write!(f, "dihedral({n})"),
            GroupSpec::Quaternion(n) => write!(f, "quaternion({n})"),
            GroupSpec::Heisenberg(p) => write!(f, "heisenberg({p})"),
            GroupSpec::ModularP3(p) => write!(f, "modular_p3({p})"),
            GroupSpec::Extraspecial { p, n, variant } => {
                write!(f, "extraspecial(p={p},n={n},variant={variant})")
            }
            GroupSpec::Symmetric(m) => write!(f, "symmetric({m})"),
            GroupSpec::DirectProduct(a, b) => write!(f, "product({a},{b})"),
            GroupSpec::CentralProduct(a, b) => write!(f, "centralproduct({a},{b})"),
            GroupSpec::CayleyFile(path) => write!(f, "file:{}", path.display()),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpecError {
    #[error("syntax error at {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown constructor `{name}` at {position}")]
    UnknownConstructor { position: usize, name: String },
    #[error("bad parameter at {position}: {message}")]
    BadParameter { position: usize, message: String },
}

impl SpecError {
    pub fn position(&self) -> usize {
        match self {
            SpecError::Syntax { position, .. }
            | SpecError::UnknownConstructor { position, .. }
            | SpecError::BadParameter { position, .. } => *position,
        }
    }
}

#[derive(Clone, Debug)]
enum Value {
    Number(u64),
    Word(String),
}

struct Arg {
    name: Option<String>,
    value: Value,
    position: usize,
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn syntax(&self, message: impl Into<String>) -> SpecError {
        SpecError::Syntax {
            position: self.pos,
            message: message.into(),
        }
    }

    fn expect(&mut self, c: char) -> Result<(), SpecError> {
        self.skip_ws();
        match self.peek() {
            Some(got) if got == c => {
                self.pos += 1;
                Ok(())
            }
            Some(got) => Err(self.syntax(format!("expected `{c}`, found `{got}`"))),
            None => Err(self.syntax(format!("expected `{c}`, found end of input"))),
        }
    }

    fn word(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == '_' {
                self.pos += 1;
            } else {
                break;
            }
        }
        (self.pos > start).then(|| self.text[start..self.pos].to_string())
    }

    fn spec(&mut self, depth: usize) -> Result<GroupSpec, SpecError> {
        if depth > MAX_NESTING {
            return Err(self.syntax(format!("nesting deeper than {MAX_NESTING}")));
        }
        self.skip_ws();
        let start = self.pos;
        let name = self
            .word()
            .ok_or_else(|| self.syntax("expected a constructor name"))?;
        self.skip_ws();
        if name == "file" && self.peek() == Some(':') {
            self.pos += 1;
            return self.path(depth).map(GroupSpec::CayleyFile);
        }
        match name.as_str() {
            "product" | "direct_product" | "centralproduct" | "central_product" => {
                self.expect('(')?;
                let left = self.spec(depth + 1)?;
                self.expect(',')?;
                let right = self.spec(depth + 1)?;
                self.expect(')')?;
                let (l, r) = (Box::new(left), Box::new(right));
                Ok(if name.contains("central") {
                    GroupSpec::CentralProduct(l, r)
                } else {
                    GroupSpec::DirectProduct(l, r)
                })
            }
            _ => {
                if !KINDS.contains(&name.as_str()) {
                    return Err(SpecError::UnknownConstructor { position: start, name });
                }
                self.expect('(')?;
                let args = self.args()?;
                self.expect(')')?;
                bind(&name, start, args)
            }
        }
    }

    /// A `file:` path runs to the next `,` or `)` when nested, else to the end.
    fn path(&mut self, depth: usize) -> Result<PathBuf, SpecError> {
        let start = self.pos;
        let end = if depth == 0 {
            self.text.len()
        } else {
            self.text[start..]
                .find([',', ')'])
                .map_or(self.text.len(), |i| start + i)
        };
        self.pos = end;
        let path = self.text[start..end].trim();
        if path.is_empty() {
            return Err(SpecError::Syntax {
                position: start,
                message: "empty file path".into(),
            });
        }
        Ok(PathBuf::from(path))
    }

    fn args(&mut self) -> Result<Vec<Arg>, SpecError> {
        let mut args = Vec::new();
        self.skip_ws();
        if self.peek() == Some(')') {
            return Ok(args);
        }
        loop {
            self.skip_ws();
            let position = self.pos;
            let first = self.word().ok_or_else(|| self.syntax("expected a parameter"))?;
            self.skip_ws();
            let (name, value) = if self.peek() == Some('=') {
                self.pos += 1;
                let value = self.word().ok_or_else(|| self.syntax("expected a value after `=`"))?;
                (Some(first), value)
            } else {
                (None, first)
            };
            let value = if value.bytes().all(|b| b.is_ascii_digit()) {
                Value::Number(value.parse().map_err(|_| SpecError::BadParameter {
                    position,
                    message: format!("number `{value}` is too large"),
                })?)
            } else {
                Value::Word(value)
            };
            args.push(Arg { name, value, position });
            self.skip_ws();
            match self.peek() {
                Some(',') => self.pos += 1,
                _ => return Ok(args),
            }
        }
    }
}

const KINDS: &[&str] = &[
    "abelian",
    "cyclic",
    "dihedral",
    "quaternion",
    "heisenberg",
    "modular_p3",
    "extraspecial",
    "symmetric",
];

fn params_of(kind: &str) -> &'static [&'static str] {
    match kind {
        "cyclic" => &["n"],
        "dihedral" | "quaternion" => &["order"],
        "heisenberg" | "modular_p3" => &["p"],
        "extraspecial" => &["p", "n", "variant"],
        "symmetric" => &["m"],
        _ => &[],
    }
}

fn bind(kind: &str, position: usize, args: Vec<Arg>) -> Result<GroupSpec, SpecError> {
    let bad = |position: usize, message: String| SpecError::BadParameter { position, message };
    let number = |arg: &Arg| match &arg.value {
        Value::Number(n) => Ok(*n),
        Value::Word(w) => Err(bad(arg.position, format!("expected a number, found `{w}`"))),
    };
    if kind == "abelian" {
        let mut orders = Vec::new();
        for arg in &args {
            if let Some(name) = &arg.name {
                return Err(bad(arg.position, format!("abelian takes positional orders, not `{name}`")));
            }
            let n = number(arg)?;
            if n < 2 {
                return Err(bad(arg.position, format!("abelian factor order {n} must be >= 2")));
            }
            orders.push(n);
        }
        return Ok(GroupSpec::Abelian(orders));
    }

    let params = params_of(kind);
    let mut slots: Vec<Option<&Arg>> = vec![None; params.len()];
    let mut next = 0;
    for arg in &args {
        let slot = match &arg.name {
            Some(name) => params
                .iter()
                .position(|p| p == name)
                .ok_or_else(|| bad(arg.position, format!("{kind} has no parameter `{name}`")))?,
            None => {
                while next < slots.len() && slots[next].is_some() {
                    next += 1;
                }
                if next == slots.len() {
                    return Err(bad(arg.position, format!("too many arguments for {kind}")));
                }
                next
            }
        };
        if slots[slot].replace(arg).is_some() {
            return Err(bad(arg.position, format!("parameter `{}` given twice", params[slot])));
        }
    }
    let get = |i: usize| slots[i].ok_or_else(|| bad(position, format!("{kind} is missing `{}`", params[i])));
    let prime = |arg: &Arg, odd: bool| -> Result<u64, SpecError> {
        let p = number(arg)?;
        if !is_prime(p) {
            return Err(bad(arg.position, format!("{p} is not prime")));
        }
        if odd && p == 2 {
            return Err(bad(arg.position, format!("{kind} needs an odd prime")));
        }
        Ok(p)
    };

    match kind {
        "cyclic" => {
            let n = number(get(0)?)?;
            if n == 0 {
                return Err(bad(position, "cyclic order must be >= 1".into()));
            }
            Ok(GroupSpec::Cyclic(n))
        }
        "dihedral" => {
            let n = number(get(0)?)?;
            if n < 4 || n % 2 != 0 {
                return Err(bad(position, format!("dihedral order {n} must be even and >= 4")));
            }
            Ok(GroupSpec::Dihedral(n))
        }
        "quaternion" => {
            let n = number(get(0)?)?;
            if n < 8 || !n.is_power_of_two() {
                return Err(bad(position, format!("quaternion order {n} must be a power of 2, >= 8")));
            }
            Ok(GroupSpec::Quaternion(n))
        }
        "heisenberg" => Ok(GroupSpec::Heisenberg(prime(get(0)?, true)?)),
        "modular_p3" => Ok(GroupSpec::ModularP3(prime(get(0)?, true)?)),
        "extraspecial" => {
            let p = prime(get(0)?, false)?;
            let n_arg = get(1)?;
            let n = number(n_arg)?;
            if n == 0 || n > u32::MAX as u64 {
                return Err(bad(n_arg.position, format!("rank {n} must be >= 1")));
            }
            let v_arg = get(2)?;
            let variant = match &v_arg.value {
                Value::Word(w) if w == "plus" => Variant::Plus,
                Value::Word(w) if w == "minus" => Variant::Minus,
                _ => return Err(bad(v_arg.position, "variant must be `plus` or `minus`".into())),
            };
            Ok(GroupSpec::Extraspecial {
                p,
                n: n as u32,
                variant,
            })
        }
        "symmetric" => {
            let m = number(get(0)?)?;
            if m == 0 || m > u32::MAX as u64 {
                return Err(bad(position, format!("symmetric degree {m} must be >= 1")));
            }
            Ok(GroupSpec::Symmetric(m as u32))
        }
        _ => unreachable!("kind checked against KINDS"),
    }
}

/// Parses one group spec.
pub fn parse_spec(text: &str) -> Result<GroupSpec, SpecError> {
    let mut parser = Parser { text, pos: 0 };
    let spec = parser.spec(0)?;
    parser.skip_ws();
    if parser.pos != text.len() {
        return Err(parser.syntax("trailing input"));
    }
    Ok(spec)
}

#[derive(Debug, Error)]
pub enum BuildError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Cayley(#[from] CayleyError),
    #[error("cannot read {path}: {message}")]
    Io { path: PathBuf, message: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuildOptions {
    pub cap: usize,
    pub validation: Validation,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            cap: DEFAULT_ORDER_CAP,
            validation: Validation::default(),
        }
    }
}

fn central_pair(a: &GroupTable, b: &GroupTable) -> Result<(ElementId, ElementId), GroupError> {
    let za = smallest_central_of_prime_order(a).ok_or_else(|| {
        GroupError::BadParameter(format!("{} has no central element of prime order", a.label()))
    })?;
    let p = a.element_order(za);
    let zb = b
        .center()
        .iter()
        .find(|&z| b.element_order(z) == p)
        .ok_or_else(|| {
            GroupError::BadParameter(format!("{} has no central element of order {p}", b.label()))
        })?;
    Ok((za, zb))
}

impl GroupSpec {
    pub fn build(&self, options: &BuildOptions) -> Result<GroupTable, BuildError> {
        let cap = options.cap;
        let group = match self {
            GroupSpec::Abelian(orders) => abelian(orders, cap)?,
            GroupSpec::Cyclic(n) => cyclic(*n, cap)?,
            GroupSpec::Dihedral(n) => dihedral(*n, cap)?,
            GroupSpec::Quaternion(n) => quaternion(*n, cap)?,
            GroupSpec::Heisenberg(p) => heisenberg(*p, cap)?,
            GroupSpec::ModularP3(p) => modular_p3(*p, cap)?,
            GroupSpec::Extraspecial { p, n, variant } => extraspecial(*p, *n, *variant, cap)?,
            GroupSpec::Symmetric(m) => {
                // m! exceeds every sensible cap well before the closure finishes
                let order = (1..=*m as u128).try_fold(1u128, |acc, k| acc.checked_mul(k));
                crate::group::check_cap(order.unwrap_or(u128::MAX), cap)?;
                symmetric(*m as usize, cap)?
            }
            GroupSpec::DirectProduct(a, b) => {
                let (a, b) = (a.build(options)?, b.build(options)?);
                a.direct_product(&b, cap)?
            }
            GroupSpec::CentralProduct(a, b) => {
                let (a, b) = (a.build(options)?, b.build(options)?);
                let (za, zb) = central_pair(&a, &b)?;
                a.central_product(&b, za, zb, cap)?
            }
            GroupSpec::CayleyFile(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| BuildError::Io {
                    path: path.clone(),
                    message: e.to_string(),
                })?;
                read_cayley_table(&text, self.to_string(), cap, options.validation)?
            }
        };
        Ok(group.with_label(self.to_string()))
    }
}
