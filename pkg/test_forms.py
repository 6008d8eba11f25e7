"""Parameter form tests."""

# run these tests like:
#
#    python -m unittest test_forms.py

from unittest import TestCase

from forms import BetaForm, EpsForm, ModeForm, UnitForm, form_errors


class FormsTestCase(TestCase):
    """Tests for the WTForms validators of parameter files."""

    def test_eps_form(self):
        self.assertTrue(EpsForm(data={"m": 1, "d": 3}).validate())
        # booleans are ints in Python but not here
        self.assertFalse(EpsForm(data={"m": True, "d": 3}).validate())
        self.assertFalse(EpsForm(data={"m": 1, "d": 0}).validate())
        self.assertFalse(EpsForm(data={"m": 1, "d": 2.0}).validate())

    def test_beta_form(self):
        self.assertTrue(BetaForm(data={"j": 1, "k": 2, "m": -1, "d": 4}).validate())
        self.assertFalse(BetaForm(data={"j": 0, "k": 2, "m": 1, "d": 4}).validate())

    def test_mode_form(self):
        self.assertTrue(ModeForm(data={"c_formal": True, "q_deformed": None}).validate())
        self.assertFalse(ModeForm(data={"c_formal": "yes", "q_deformed": False}).validate())

    def test_unit_form(self):
        self.assertTrue(UnitForm(data={"name": "u1"}).validate())
        self.assertFalse(UnitForm(data={"name": "1u"}).validate())
        self.assertFalse(UnitForm(data={"name": 7}).validate())

    def test_form_errors(self):
        """Errors are flattened with the field location."""

        form = EpsForm(data={"m": 1, "d": "x"})
        form.validate()
        errors = list(form_errors(form, "eps[0]"))
        self.assertEqual(errors[0][0], "eps[0].d")
