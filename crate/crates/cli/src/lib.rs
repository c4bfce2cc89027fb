pub mod commands;
pub mod complex;
pub mod config;
pub mod docs;
