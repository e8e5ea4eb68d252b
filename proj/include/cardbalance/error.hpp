#pragma once

#include <stdexcept>
#include <string>

namespace cardbalance {

/// Root of every exception the library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Patch length or layout does not match the card pool.
class LayoutError : public Error {
public:
    using Error::Error;
};

/// A file or record does not satisfy its schema. The message names the locus.
class ParseError : public Error {
public:
    using Error::Error;
};

/// A card id does not resolve in the pool.
class ReferenceError : public Error {
public:
    using Error::Error;
};

/// Deck construction rules are violated (size, copy limit, class).
class DeckError : public Error {
public:
    using Error::Error;
};

/// An operation that requires a live game was given a finished one.
class TerminalError : public Error {
public:
    using Error::Error;
};

class IllegalActionError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class IncompleteMatrixError : public Error {
public:
    using Error::Error;
};

class InsufficientDataError : public Error {
public:
    using Error::Error;
};

} // namespace cardbalance
