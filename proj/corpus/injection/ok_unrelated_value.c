int injection_ok_unrelated_value_main(int c) {
  char *x = input();
  char *y = "date";
  system(y);
  return 0;
}
