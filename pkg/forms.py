from wtforms import BooleanField, Form, IntegerField, StringField
from wtforms.validators import NumberRange, Regexp, StopValidation


def integral(form, field):
    """Accept only real integers (no floats, strings or booleans)."""

    value = field.object_data
    if isinstance(value, bool) or not isinstance(value, int):
        raise StopValidation("Must be an integer.")


def boolean(form, field):
    """Accept a JSON boolean or nothing."""

    value = field.object_data
    if value is not None and not isinstance(value, bool):
        raise StopValidation("Must be true or false.")


def text(form, field):
    if not isinstance(field.object_data, str):
        raise StopValidation("Must be a string.")


class ParamsForm(Form):
    """Top level of a parameter file."""

    n = IntegerField('n', validators=[integral, NumberRange(min=1)])


class EpsForm(Form):
    """One epsilon_j = exp(2 pi i m/d)."""

    m = IntegerField('m', validators=[integral])
    d = IntegerField('d', validators=[integral, NumberRange(min=1)])


class BetaForm(Form):
    """One beta_jk = exp(2 pi i m/d), 1-based indices."""

    j = IntegerField('j', validators=[integral, NumberRange(min=1)])
    k = IntegerField('k', validators=[integral, NumberRange(min=1)])
    m = IntegerField('m', validators=[integral])
    d = IntegerField('d', validators=[integral, NumberRange(min=1)])


class ModeForm(Form):
    """Mode flags of a parameter file."""

    c_formal = BooleanField('c_formal', validators=[boolean])
    q_deformed = BooleanField('q_deformed', validators=[boolean])


class UnitForm(Form):
    """Name of a formal unit variable."""

    name = StringField('name', validators=[
        text, Regexp(r'^[a-z][a-z0-9_]*$', message="Must be a lowercase identifier.")])


def form_errors(form, location):
    """Flatten a failed form into (location, message) pairs."""

    for field_name, messages in form.errors.items():
        for message in messages:
            yield f"{location}.{field_name}", message
