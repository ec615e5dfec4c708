def describe(command):
    match command.split():
        case ["go", direction]:
            return f"moving {direction}"
        case ["look"]:
            return "looking around"
        case ["take", *objects]:
            return "taking " + ", ".join(objects)
        case _:
            return "unknown command"
