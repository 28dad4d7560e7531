use std::fmt;
use std::fs;
use std::io::{self, Read, Write};

use paritykit::cells::CellTable;
use paritykit::fixture::{Fixture, FixtureError};
use paritykit::morphism::GradedMorphism;
use paritykit::structure::AdditiveParityStructure;

/// Anything that ends the run with exit code 2.
#[derive(Debug)]
pub struct Fatal(pub String);

impl fmt::Display for Fatal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<FixtureError> for Fatal {
    fn from(e: FixtureError) -> Self {
        Fatal(e.to_string())
    }
}

impl From<io::Error> for Fatal {
    fn from(e: io::Error) -> Self {
        Fatal(e.to_string())
    }
}

pub fn read_text(path: &str) -> Result<String, Fatal> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Fatal(format!("{path}: {e}")))
    }
}

pub fn read_fixture(path: &str) -> Result<Fixture, Fatal> {
    Fixture::parse(&read_text(path)?).map_err(|e| Fatal(format!("{path}: {e}")))
}

pub fn read_structure(path: &str) -> Result<AdditiveParityStructure, Fatal> {
    read_fixture(path)?
        .into_structure()
        .map_err(|e| Fatal(format!("{path}: {e}")))
}

pub fn read_cell(path: &str) -> Result<CellTable, Fatal> {
    read_fixture(path)?
        .into_cell()
        .map_err(|e| Fatal(format!("{path}: {e}")))
}

pub fn read_morphism(path: &str) -> Result<GradedMorphism, Fatal> {
    read_fixture(path)?
        .into_morphism()
        .map_err(|e| Fatal(format!("{path}: {e}")))
}

pub fn write_text(path: &str, text: &str) -> Result<(), Fatal> {
    if path == "-" {
        io::stdout().write_all(text.as_bytes())?;
        Ok(())
    } else {
        fs::write(path, text).map_err(|e| Fatal(format!("{path}: {e}")))
    }
}
