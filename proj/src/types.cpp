#include "shuttlesense/types.hpp"

#include "shuttlesense/errors.hpp"

namespace shuttlesense {

std::string to_string(StrokeClass c) {
    switch (c) {
        case StrokeClass::Smash: return "Smash";
        case StrokeClass::Lift: return "Lift";
        case StrokeClass::Clear: return "Clear";
        case StrokeClass::Block: return "Block";
        case StrokeClass::Slice: return "Slice";
        case StrokeClass::Drive: return "Drive";
    }
    return "Drive";
}

StrokeClass stroke_class_from_string(const std::string& name) {
    for (StrokeClass c : kAllStrokeClasses)
        if (to_string(c) == name) return c;
    throw Error("unknown stroke class: " + name);
}

std::string to_string(SubjectRole r) {
    return r == SubjectRole::Reference ? "Reference" : "Trainee";
}

SubjectRole role_from_string(const std::string& name) {
    if (name == "Reference") return SubjectRole::Reference;
    if (name == "Trainee") return SubjectRole::Trainee;
    throw Error("unknown role: " + name);
}

std::string to_string(Handedness h) {
    return h == Handedness::Right ? "Right" : "Left";
}

Handedness handedness_from_string(const std::string& name) {
    if (name == "Right") return Handedness::Right;
    if (name == "Left") return Handedness::Left;
    throw Error("unknown handedness: " + name);
}

} // namespace shuttlesense
