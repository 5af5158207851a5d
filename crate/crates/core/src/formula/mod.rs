//! Formula syntax: AST, parser, printer, definition tables and expansion.

pub mod ast;
pub mod defs;
pub mod expand;
pub mod parse;
mod print;

pub use ast::{Formula, ParamExpr, Term};
pub use defs::{DefError, DefTable, Definition, Family, ParamSpec};
pub use expand::{expand, substitute, ExpandError, Expander};
pub use parse::{parse, parse_definitions, parse_formula, ParseError};
