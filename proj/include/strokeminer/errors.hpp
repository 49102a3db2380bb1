#pragma once

#include <stdexcept>
#include <string>

namespace strokeminer {

// Base class for all pipeline errors. Subclasses mirror the failure
// categories of the individual processing stages so callers can react
// per category instead of string-matching messages.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed file container: bad CSV header, bad JSON sidecar, bad model text.
class FormatError : public Error {
public:
    using Error::Error;
};

// Frame indices out of order, duplicated, or not starting at zero.
class SequenceError : public Error {
public:
    using Error::Error;
};

// A cell that is non-numeric, missing, or non-finite.
class ValueError : public Error {
public:
    using Error::Error;
};

// Not enough frames or recordings for the requested computation.
class InsufficientData : public Error {
public:
    using Error::Error;
};

// Zero-variance series; correlation undefined.
class DegenerateSeries : public Error {
public:
    using Error::Error;
};

// Dataset has no instances.
class EmptyDataset : public Error {
public:
    using Error::Error;
};

// Class-count vector sums to zero.
class EmptyPartition : public Error {
public:
    using Error::Error;
};

// Candidate threshold leaves one side of the partition empty.
class DegenerateSplit : public Error {
public:
    using Error::Error;
};

// Feature vector or dataset schema does not match the model/partner schema.
class SchemaError : public Error {
public:
    using Error::Error;
};

// Fold count incompatible with the number of instances or groups.
class FoldError : public Error {
public:
    using Error::Error;
};

// Evaluation over an empty prediction set or empty confusion matrix.
class EmptyEvaluation : public Error {
public:
    using Error::Error;
};

}  // namespace strokeminer
