pub mod analysis;
pub mod cli;
pub mod conic;
pub mod factor;
pub mod instances;
pub mod mestre;
pub mod minimise;
pub mod modular;
pub mod poly;
pub mod search;
