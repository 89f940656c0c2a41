//! Test-only oracles shared by several integration targets.
#![allow(dead_code)]

pub mod kauffman;
