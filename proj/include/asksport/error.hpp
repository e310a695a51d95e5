#pragma once

#include <stdexcept>
#include <string>

namespace asksport {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad user input: malformed arguments, missing files, violated preconditions.
class InputError : public Error {
public:
    using Error::Error;
};

class DomainError : public InputError {
public:
    using InputError::InputError;
};

class IngestError : public InputError {
public:
    using InputError::InputError;
};

class EmptyCorpusError : public IngestError {
public:
    using IngestError::IngestError;
};

class DuplicateDocumentError : public InputError {
public:
    explicit DuplicateDocumentError(const std::string& doc_id)
        : InputError("duplicate doc_id: " + doc_id), doc_id_(doc_id) {}

    const std::string& doc_id() const noexcept { return doc_id_; }

private:
    std::string doc_id_;
};

class QaLoadError : public InputError {
public:
    using InputError::InputError;
};

class EmptyQaSetError : public QaLoadError {
public:
    using QaLoadError::QaLoadError;
};

class IndexError : public InputError {
public:
    using InputError::InputError;
};

/// The index file's version marker names a format this build cannot read.
class UnsupportedVersionError : public IndexError {
public:
    using IndexError::IndexError;
};

/// Truncated, corrupted or structurally inconsistent index file.
class IntegrityError : public IndexError {
public:
    using IndexError::IndexError;
};

class UnknownDocumentError : public InputError {
public:
    explicit UnknownDocumentError(const std::string& doc_id)
        : InputError("unknown doc_id: " + doc_id) {}
};

/// Remote reader could not be reached or answered with a non-2xx status.
class ReaderUnavailableError : public Error {
public:
    using Error::Error;
};

/// Remote reader answered with a body that does not follow the wire protocol.
class ProtocolError : public Error {
public:
    using Error::Error;
};

class ConfigError : public InputError {
public:
    using InputError::InputError;
};

} // namespace asksport
