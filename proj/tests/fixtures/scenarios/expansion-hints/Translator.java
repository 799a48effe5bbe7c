package demo;

import java.util.HashMap;
import java.util.Map;

public class Translator {
    private final Map<String, String> translations = new HashMap<>();

    public void addTranslation(String word, String translation) {
        translations.put(word, translation);
    }

    public String translate(String word) {
        return translations.getOrDefault(word, word);
    }

    public String demo() {
        addTranslation("buon", "good");
        return translate("buon");
    }
}
