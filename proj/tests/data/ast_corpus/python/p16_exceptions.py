class ValidationError(Exception):
    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field


def validate_user(user):
    errors = []
    try:
        if not user.get("name"):
            raise ValidationError("name", "required")
        if "@" not in user.get("email", ""):
            raise ValidationError("email", "invalid")
    except* ValidationError as group:
        errors.extend(group.exceptions)
    return errors
