#pragma once

#include <stdexcept>
#include <string>

namespace shuttlesense {

// Base class for every error the library raises on bad input or bad state.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ingest
struct MalformedFile : Error {
    explicit MalformedFile(const std::string& path, const std::string& why)
        : Error("malformed file: " + path + ": " + why), path(path) {}
    std::string path;
};
struct MalformedRow : Error {
    MalformedRow(const std::string& path, int line_no)
        : Error("malformed row: " + path + ":" + std::to_string(line_no)),
          line_no(line_no) {}
    int line_no;
};
struct NonMonotoneFrames : Error {
    using Error::Error;
};
struct EmptySession : Error {
    using Error::Error;
};
struct BadKeypointCount : Error {
    using Error::Error;
};

// kinematics
struct DegenerateJoint : Error {
    using Error::Error;
};
struct BadWindow : Error {
    using Error::Error;
};
struct MissingTorso : Error {
    using Error::Error;
};

// strokes
struct EmptyStroke : Error {
    using Error::Error;
};
struct EmptyWindow : Error {
    using Error::Error;
};

// reference
struct EmptyReference : Error {
    using Error::Error;
};
struct UnknownClass : Error {
    using Error::Error;
};

// court
struct OutOfCourt : Error {
    using Error::Error;
};
struct EmptyHeatmap : Error {
    using Error::Error;
};

// shuttlesim
struct NoLanding : Error {
    using Error::Error;
};
struct BadSpec : Error {
    using Error::Error;
};

// config / cli
struct BadConfig : Error {
    using Error::Error;
};

} // namespace shuttlesense
