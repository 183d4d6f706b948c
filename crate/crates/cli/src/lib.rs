pub mod corpus;
pub mod parser;
pub mod report;
